import subprocess
import sys

import numpy as np
import pytest

from bckcodes import _kernels as K

NUMBA_AVAILABLE = "numba" in K.IMPLEMENTATIONS

pytestmark = pytest.mark.skipif(
    not NUMBA_AVAILABLE, reason="numba backend not importable"
)

SCAN_NAMES = ("bck_axiom_scan", "hilbert_axiom_scan", "bck_property_scan")


def random_tables(count, seed, max_n=9):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_n))
        yield rng.integers(0, n, size=(n, n)).astype(np.int64)


class TestBackendEquivalence:
    @pytest.mark.parametrize("name", SCAN_NAMES)
    def test_scans_agree_on_random_tables(self, name):
        for t in random_tables(200, seed=hash(name) % 1000):
            a = K.IMPLEMENTATIONS["numpy"][name](t, 0)
            b = K.IMPLEMENTATIONS["numba"][name](t, 0)
            assert np.array_equal(a, b), t

    def test_canonical_agrees_on_random_tables(self):
        for t in random_tables(150, seed=31, max_n=7):
            perms, invs = K.theta_fixing_perms(t.shape[0])
            a = K.IMPLEMENTATIONS["numpy"]["canonical_table"](t, perms, invs)
            b = K.IMPLEMENTATIONS["numba"]["canonical_table"](t, perms, invs)
            assert np.array_equal(a, b), t


class TestCanonicalForm:
    def test_invariant_under_theta_fixing_relabeling(self):
        rng = np.random.default_rng(13)
        for t in random_tables(60, seed=19, max_n=7):
            n = t.shape[0]
            perms, invs = K.theta_fixing_perms(n)
            base = K.canonical_table(t, perms, invs)
            sigma = np.concatenate(([0], rng.permutation(np.arange(1, n)))).astype(np.int64)
            inv = np.argsort(sigma)
            relabeled = sigma[t[inv[:, None], inv[None, :]]]
            again = K.canonical_table(relabeled, perms, invs)
            assert np.array_equal(base, again)

    def test_canonical_form_is_reachable(self):
        # the canonical serialization must itself be one of the relabelings
        for t in random_tables(40, seed=23, max_n=6):
            n = t.shape[0]
            perms, invs = K.theta_fixing_perms(n)
            best = K.canonical_table(t, perms, invs)
            serializations = []
            for p in range(len(perms)):
                sigma, inv = perms[p], invs[p]
                serializations.append(
                    tuple(sigma[t[inv[:, None], inv[None, :]]].flatten())
                )
            assert tuple(best) == min(serializations)


class TestPermTable:
    def test_identity_first(self):
        perms, invs = K.theta_fixing_perms(4)
        assert perms.shape == (6, 4)
        assert list(perms[0]) == [0, 1, 2, 3]
        for p in range(len(perms)):
            assert perms[p][invs[p]].tolist() == [0, 1, 2, 3]
            assert perms[p][0] == 0


class TestBackendSelection:
    def test_resolver(self):
        assert K.resolve_backend("numpy") == "numpy"
        assert K.resolve_backend("numba") == "numba"
        assert K.resolve_backend("") in ("numba", "numpy")

    def test_env_flag_switches_backend(self):
        code = (
            "from bckcodes import _kernels; "
            "print(_kernels.BACKEND)"
        )
        for choice in ("numpy", "numba"):
            out = subprocess.run(
                [sys.executable, "-c", code],
                capture_output=True,
                text=True,
                env={"PATH": "/usr/bin:/bin", "BCKCODES_BACKEND": choice},
            )
            assert out.stdout.strip() == choice, out.stderr
