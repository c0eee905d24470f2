import dataclasses

import pytest

from gmnt.families import FamilySpec
from gmnt.search import (
    CurveCandidate,
    SearchConfig,
    _squarefree_chunk,
    iter_search,
    run_search,
    verify_candidate,
    verify_record,
)

# Every candidate the k = 6 cofactor-one family (branch B) admits with
# |delta| <= 50 and p below 16 bits, worked out by hand:
#   x =  6: p = 37, n = 31, t =  7, t^2 - 4p =  -99 = -11 * 3^2
#   x = -2: p =  5, n =  7, t = -1, t^2 - 4p =  -19
#   x =  4: p = 17, n = 13, t =  5, t^2 - 4p =  -43
_B6 = FamilySpec(6, 1, 0, "B")
FIXTURE = (
    CurveCandidate(family=_B6, x=6, p=37, n=31, t=7, delta=-11, y=3),
    CurveCandidate(family=_B6, x=-2, p=5, n=7, t=-1, delta=-19, y=1),
    CurveCandidate(family=_B6, x=4, p=17, n=13, t=5, delta=-43, y=1),
)

FIXTURE_PELL = SearchConfig(
    k=6, q=1, branches=("B",), mode="pell", delta_max=50, p_bits_max=16
)
FIXTURE_SCAN = SearchConfig(
    k=6, q=1, branches=("B",), mode="scan", delta_max=50, p_bits_max=16,
    x_min=-300, x_max=300,
)


def canonical_key(c):
    return (abs(c.delta), abs(c.x), c.x, c.branch, c.s)


class TestSearchConfig:
    def test_rejects_inadmissible_cofactor(self):
        for k, q in ((6, 5), (6, 4), (4, 3), (3, 2), (3, 3), (6, 0), (4, -1)):
            with pytest.raises(ValueError):
                SearchConfig(k=k, q=q)

    def test_accepts_special_cofactors(self):
        SearchConfig(k=6, q=3)
        SearchConfig(k=4, q=2)
        SearchConfig(k=3, q=13)

    def test_rejects_bad_mode_and_branches(self):
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, mode="walk")
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, branches=())
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, branches=("A", "C"))

    def test_rejects_bad_delta_window(self):
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, delta_min=0)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, delta_min=10, delta_max=9)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, delta_max=10**10 + 1)

    def test_rejects_bad_x_windows(self):
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, x_bits_max=0)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, x_bits_max=513)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, mode="scan")
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, mode="scan", x_min=5, x_max=4)

    def test_rejects_bad_p_bits_window(self):
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, p_bits_min=0)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, p_bits_min=80, p_bits_max=60)

    def test_rejects_bad_limits(self):
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, max_hits=-1)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, trial_bound=1)
        with pytest.raises(ValueError):
            SearchConfig(k=6, q=1, jobs=0)


class TestCurveCandidate:
    def test_properties(self):
        c = FIXTURE[0]
        assert (c.k, c.q, c.s, c.branch) == (6, 1, 0, "B")
        assert c.p_bits == 6
        assert c.n_bits == 5

    def test_json_shape_is_frozen(self):
        d = FIXTURE[0].to_json_dict()
        assert d == {
            "k": 6, "q": 1, "s": 0, "branch": "B",
            "x": "6", "p": "37", "n": "31", "t": "7",
            "delta": "-11", "Y": "3", "p_bits": 6, "n_bits": 5,
        }
        assert list(d) == [
            "k", "q", "s", "branch", "x", "p", "n", "t",
            "delta", "Y", "p_bits", "n_bits",
        ]

    def test_json_round_trip(self):
        for c in FIXTURE:
            assert CurveCandidate.from_json_dict(c.to_json_dict()) == c

    def test_from_json_accepts_plain_integers(self):
        d = FIXTURE[1].to_json_dict()
        d.update(x=-2, p=5, n=7, t=-1, delta=-19, Y=1)
        assert CurveCandidate.from_json_dict(d) == FIXTURE[1]

    def test_malformed_records_raise_value_error(self):
        good = FIXTURE[0].to_json_dict()
        for damage in (
            lambda d: d.pop("x"),
            lambda d: d.pop("Y"),
            lambda d: d.update(x="six"),
            lambda d: d.update(branch="C"),
            lambda d: d.update(x=None),
            lambda d: d.update(s=5),
        ):
            d = dict(good)
            damage(d)
            with pytest.raises(ValueError):
                CurveCandidate.from_json_dict(d)


class TestPellSearch:
    def test_fixture_window_is_exact(self):
        assert run_search(FIXTURE_PELL) == FIXTURE

    def test_stream_is_canonically_ordered(self):
        cfg = SearchConfig(k=6, q=7, mode="pell", delta_max=9000, x_bits_max=30)
        got = list(iter_search(cfg))
        assert got == sorted(got, key=canonical_key)
        assert len(set((c.family, c.x) for c in got)) == len(got)

    def test_delta_window_restricts(self):
        cfg = dataclasses.replace(FIXTURE_PELL, delta_min=15)
        assert run_search(cfg) == FIXTURE[1:]
        cfg = dataclasses.replace(FIXTURE_PELL, delta_min=20)
        assert run_search(cfg) == FIXTURE[2:]

    def test_x_bits_restrict(self):
        cfg = dataclasses.replace(FIXTURE_PELL, x_bits_max=2)
        # only |x| < 4 survives
        assert run_search(cfg) == FIXTURE[1:2]

    def test_p_bits_window_restricts(self):
        cfg = dataclasses.replace(FIXTURE_PELL, p_bits_min=4)
        assert run_search(cfg) == (FIXTURE[0], FIXTURE[2])

    def test_max_hits_truncates_to_prefix(self):
        cfg = SearchConfig(k=6, q=7, mode="pell", delta_max=3000, x_bits_max=30)
        full = list(iter_search(cfg))
        cut = list(iter_search(dataclasses.replace(cfg, max_hits=2)))
        assert cut == full[:2]


class TestScanSearch:
    def test_fixture_window_is_exact(self):
        assert run_search(FIXTURE_SCAN) == FIXTURE

    def test_stream_ascends_in_x(self):
        xs = [c.x for c in iter_search(FIXTURE_SCAN)]
        assert xs == sorted(xs)

    def test_tight_trial_bound_keeps_window_exact(self):
        # Splitting can only fail on discriminants above the trial
        # bound, which the delta window discards anyway.
        cfg = dataclasses.replace(FIXTURE_SCAN, trial_bound=53)
        assert run_search(cfg) == FIXTURE


class TestModeAgreement:
    # |x| < 2^10 on the pell side is the same window as [-1023, 1023]
    # on the scan side, so the two strategies must emit identical sets.
    WINDOWS = [
        (6, 1), (6, 3), (6, 7), (4, 1), (4, 2), (4, 5), (3, 1), (3, 13),
    ]

    @pytest.mark.parametrize("k,q", WINDOWS)
    def test_pell_and_scan_agree(self, k, q):
        pell = SearchConfig(k=k, q=q, mode="pell", delta_max=3000, x_bits_max=10)
        scan = SearchConfig(
            k=k, q=q, mode="scan", delta_max=3000, x_min=-1023, x_max=1023
        )
        assert run_search(pell) == run_search(scan)

    def test_agreement_across_chunk_boundaries(self):
        # both windows span several worker chunks
        pell = SearchConfig(k=6, q=1, mode="pell", delta_max=9000, x_bits_max=13)
        scan = SearchConfig(
            k=6, q=1, mode="scan", delta_max=9000, x_min=-5000, x_max=5000
        )
        restricted = tuple(c for c in run_search(pell) if abs(c.x) <= 5000)
        assert restricted == run_search(scan)


class TestParallelJobs:
    def test_pell_results_do_not_depend_on_jobs(self):
        base = SearchConfig(k=6, q=7, mode="pell", delta_max=9000, x_bits_max=30)
        assert run_search(base) == run_search(dataclasses.replace(base, jobs=2))

    def test_scan_results_do_not_depend_on_jobs(self):
        base = SearchConfig(
            k=4, q=5, mode="scan", delta_max=3000, x_min=-5000, x_max=5000
        )
        assert run_search(base) == run_search(dataclasses.replace(base, jobs=3))


class TestVerifyCandidate:
    def test_search_output_verifies(self):
        for k, q in ((6, 1), (6, 7), (4, 2), (4, 5), (3, 1), (3, 7)):
            cfg = SearchConfig(k=k, q=q, mode="pell", delta_max=2000, x_bits_max=24)
            for cand in iter_search(cfg):
                report = verify_candidate(cand)
                assert report.ok, (cand, report.failures())

    def test_named_checks_catch_corruption(self):
        base = FIXTURE[0]
        cases = [
            ({"p": 39}, "p_prime"),
            ({"n": 33}, "n_prime"),
            ({"n": base.p}, "n_separated"),
            ({"t": 2}, "trace_nondegenerate"),
            ({"y": 2}, "cm_identity"),
            ({"delta": -44, "y": 1}, "delta_squarefree"),
            ({"x": 7}, "family_consistency"),
            ({"n": 41}, "embedding_degree"),
        ]
        for fields, check in cases:
            report = verify_candidate(dataclasses.replace(base, **fields))
            assert not report.ok
            assert check in [c.name for c in report.failures()], check

    def test_verify_record_round_trip(self):
        assert verify_record(FIXTURE[2].to_json_dict()).ok
        with pytest.raises(ValueError):
            verify_record({"k": 6, "q": 1})


class TestSquarefreeChunk:
    @staticmethod
    def brute(v):
        fs, rem, p = [], v, 2
        while p * p <= rem:
            if rem % p == 0:
                e = 0
                while rem % p == 0:
                    rem //= p
                    e += 1
                if e > 1:
                    return None
                fs.append(p)
            p += 1
        if rem > 1:
            fs.append(rem)
        return fs

    @pytest.mark.parametrize("lo,hi", [(1, 500), (10**6, 10**6 + 300)])
    def test_matches_brute_force(self, lo, hi):
        got = dict(_squarefree_chunk(lo, hi))
        for v in range(lo, hi):
            expect = self.brute(v)
            if expect is None:
                assert v not in got
            else:
                assert got[v] == expect
