import random

from opencob.harness import (Bounds, VerificationReport, lemma_case_instances,
                             random_composable_pair, random_surface,
                             run_suite, shrink_surface)
from opencob.surface import (compose_preflight, rank_h, validate)


class TestRandomSurface:
    def test_deterministic(self):
        a = random_surface(random.Random(123), Bounds())
        b = random_surface(random.Random(123), Bounds())
        assert a == b

    def test_all_valid_and_bounded(self):
        rng = random.Random(7)
        for _ in range(60):
            s = random_surface(rng, Bounds(max_h=6))
            validate(s)
            assert rank_h(s) <= 6

    def test_pairs_composable(self):
        rng = random.Random(9)
        for _ in range(20):
            fp, f = random_composable_pair(rng, Bounds(max_h=8))
            compose_preflight(fp, f)
            assert 1 <= len(f.outgoing) <= 3
            assert rank_h(f) <= 8 and rank_h(fp) <= 8


class TestShrinking:
    def test_shrinks_to_minimal(self):
        rng = random.Random(11)
        s = random_surface(rng, Bounds(max_h=8))

        def pred(surface):
            return len(surface.interval_ids()) >= 2

        small = shrink_surface(s, pred)
        assert pred(small)
        # removing anything more breaks the predicate, so it is small
        assert len(small.interval_ids()) <= len(s.interval_ids())
        assert len(small.components) <= len(s.components)

    def test_shrink_failing_pair_keeps_interface(self):
        from opencob.harness import shrink_failing_pair
        rng = random.Random(13)
        fp, f = random_composable_pair(rng, Bounds(max_h=8))

        # synthetic failure: "fails" whenever the pair stays composable
        def failing(cand_fp, cand_f):
            compose_preflight(cand_fp, cand_f)
            return True

        small_fp, small_f = shrink_failing_pair(fp, f, failing)
        compose_preflight(small_fp, small_f)
        assert set(small_f.outgoing) == set(f.outgoing)
        assert rank_h(small_f) <= rank_h(f)
        assert rank_h(small_fp) <= rank_h(fp)


class TestReports:
    def test_byte_identical(self):
        r1 = run_suite("constraints", seed=5, trials=10)
        r2 = run_suite("constraints", seed=5, trials=10)
        assert r1.to_text() == r2.to_text()
        assert r1.wall_time >= 0  # wall time excluded from the text

    def test_ok_property(self):
        r = VerificationReport("x", 0, 1)
        assert r.ok
        from opencob.harness import Failure
        r.failures.append(Failure(0, 0, "boom", "dump"))
        assert not r.ok
        assert "boom" in r.to_text()

    def test_lemma_instances_cover_all_cases(self):
        tags = [(c, n) for c, n, *_ in lemma_case_instances()]
        assert tags == [("1-1", 1), ("1-2", 0), ("1-3", 1),
                        ("2-1a", 0), ("2-1a", 1), ("2-1a", 2), ("2-1b", 2),
                        ("2-2a", 0), ("2-2a", 1), ("2-2b", 1)]


class TestSuitesSmoke:
    def test_theorem_small(self):
        r = run_suite("theorem", seed=1, trials=5)
        assert r.ok, r.to_text()

    def test_unknown_suite(self):
        import pytest
        with pytest.raises(ValueError):
            run_suite("nope")
