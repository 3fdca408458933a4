import itertools

import numpy as np
import pytest

from bckcodes import (
    DOT,
    STAR,
    OpTable,
    UsageError,
    are_isomorphic,
    bck_order,
    bck_properties,
    dualize,
    poset_to_bck,
    verify_axioms,
)
from bckcodes.model import Poset

from conftest import star_table
from golden import (
    EMBED9_DOT,
    EMBED9_LABELS,
    EMBED9_STAR,
    LOCAL5_DOT,
    LOCAL5_ORDER,
    LOCAL5_STAR,
    SEMI4_DOT,
    SEMI4_STAR,
)

CHAIN3 = [[0, 0, 0], [1, 0, 0], [2, 2, 0]]
ANTICHAIN3 = [[0, 0, 0], [1, 0, 1], [2, 2, 0]]


def brute_bck_violations(table, theta=0):
    """Independent oracle: evaluate every axiom instance with plain loops."""
    t = np.asarray(table)
    n = t.shape[0]
    violations = []
    for x, y, z in itertools.product(range(n), repeat=3):
        if t[t[t[x, y], t[x, z]], t[z, y]] != theta:
            violations.append((1, (x, y, z)))
            break
    for x, y in itertools.product(range(n), repeat=2):
        if t[t[x, t[x, y]], y] != theta:
            violations.append((2, (x, y)))
            break
    for x in range(n):
        if t[x, x] != theta:
            violations.append((3, (x,)))
            break
    for x, y in itertools.product(range(n), repeat=2):
        if x != y and t[x, y] == theta and t[y, x] == theta:
            violations.append((4, (x, y)))
            break
    for x in range(n):
        if t[theta, x] != theta:
            violations.append((5, (x,)))
            break
    return sorted(violations)


class TestVerifyAxioms:
    def test_embed9_star_is_bck(self):
        t = star_table(EMBED9_STAR, labels=EMBED9_LABELS)
        assert verify_axioms(t, "bck").passed

    def test_embed9_dot_is_hilbert(self):
        d = OpTable(table=EMBED9_DOT, kind=DOT, labels=EMBED9_LABELS)
        assert verify_axioms(d, "hilbert").passed

    def test_local5_and_semi4_pass(self):
        assert verify_axioms(star_table(LOCAL5_STAR), "bck").passed
        assert verify_axioms(star_table(SEMI4_STAR), "bck").passed
        assert verify_axioms(OpTable(table=LOCAL5_DOT, kind=DOT), "hilbert").passed
        assert verify_axioms(OpTable(table=SEMI4_DOT, kind=DOT), "hilbert").passed

    def test_axiom3_violation_with_witness(self):
        t = star_table([[0, 0], [1, 1]])
        report = verify_axioms(t, "bck")
        assert not report.passed
        assert (3, (1,)) in report.violations

    def test_orientation_mismatch(self):
        t = star_table(CHAIN3)
        with pytest.raises(UsageError):
            verify_axioms(t, "hilbert")
        with pytest.raises(UsageError):
            verify_axioms(dualize(t), "bck")
        with pytest.raises(UsageError):
            verify_axioms(t, "nonsense")

    def test_bci_subset_of_bck(self):
        # theta*x = x violates only axiom 5, so the table is BCI but not BCK
        t = star_table([[0, 1], [1, 0]])
        assert verify_axioms(t, "bci").passed
        report = verify_axioms(t, "bck")
        assert [a for a, _ in report.violations] == [5]

    def test_matches_brute_oracle_on_random_tables(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(1, 7))
            raw = rng.integers(0, n, size=(n, n))
            t = OpTable(table=raw, kind=STAR)
            report = verify_axioms(t, "bck")
            assert sorted(report.violations) == brute_bck_violations(raw)


class TestBckProperties:
    def test_chain3_flags_and_witnesses(self):
        flags = bck_properties(star_table(CHAIN3))
        assert not flags.commutative
        assert flags.commutative_witness == (1, 2)
        assert not flags.implicative
        assert flags.implicative_witness == (1, 2)
        assert flags.positive_implicative

    def test_chain3_against_brute_oracle(self):
        t = np.array(CHAIN3)
        # a*(a*b) = a but b*(b*a) = theta
        assert t[1, t[1, 2]] == 1 and t[2, t[2, 1]] == 0
        # a*(b*a) = a*b = theta != a
        assert t[1, t[2, 1]] == 0

    def test_semi4_positive_implicative(self):
        flags = bck_properties(star_table(SEMI4_STAR))
        assert flags.positive_implicative
        # an antichain over theta is commutative and implicative
        assert flags.commutative and flags.implicative

    def test_one_element_all_true(self):
        flags = bck_properties(star_table([[0]]))
        assert flags.commutative and flags.implicative and flags.positive_implicative

    def test_non_bck_input_rejected(self):
        with pytest.raises(UsageError):
            bck_properties(star_table([[0, 0], [1, 1]]))


class TestPropertyWitnesses:
    def test_witnesses_reevaluate_as_violations(self):
        # over every poset-induced table on up to 4 elements, a false flag
        # must come with a witness that violates the defining identity
        from test_posets import all_posets_with_least

        for n in range(1, 5):
            for poset in all_posets_with_least(n):
                table = poset_to_bck(poset)
                t = table.table
                flags = bck_properties(table)
                if not flags.commutative:
                    x, y = flags.commutative_witness
                    assert t[x, t[x, y]] != t[y, t[y, x]]
                if not flags.implicative:
                    x, y = flags.implicative_witness
                    assert t[x, t[y, x]] != x
                if not flags.positive_implicative:
                    x, y, z = flags.positive_implicative_witness
                    assert t[t[x, y], z] != t[t[x, z], t[y, z]]


class TestDualityBiconditional:
    def test_all_three_element_tables(self):
        # positive implicative BCK star tables are exactly the tables whose
        # transpose satisfies the Hilbert axioms; exhaustive over all 3^9
        # three-element tables, covering both directions
        n = 3
        seen_pi_bck = 0
        seen_bck_not_pi = 0
        for flat in itertools.product(range(n), repeat=n * n):
            star = OpTable(table=np.array(flat).reshape(n, n), kind=STAR)
            bck_ok = verify_axioms(star, "bck").passed
            pi_ok = bck_ok and bck_properties(star).positive_implicative
            hilbert_ok = verify_axioms(dualize(star), "hilbert").passed
            assert pi_ok == hilbert_ok, flat
            if pi_ok:
                seen_pi_bck += 1
            elif bck_ok:
                seen_bck_not_pi += 1
        # the scan must actually exercise both directions
        assert seen_pi_bck > 0
        assert seen_bck_not_pi > 0


class TestDualize:
    def test_embed9_star_to_dot(self):
        t = star_table(EMBED9_STAR, labels=EMBED9_LABELS)
        d = dualize(t)
        assert d.kind == DOT
        assert np.array_equal(d.table, EMBED9_DOT)
        assert d.labels == EMBED9_LABELS

    def test_semi4_star_to_dot(self):
        assert np.array_equal(dualize(star_table(SEMI4_STAR)).table, SEMI4_DOT)

    def test_involution(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            n = int(rng.integers(1, 8))
            t = OpTable(table=rng.integers(0, n, size=(n, n)), kind=STAR)
            assert dualize(dualize(t)) == t


class TestBckOrder:
    def test_local5_relations(self):
        poset = bck_order(star_table(LOCAL5_STAR))
        strict = {
            (i, j)
            for i in range(5)
            for j in range(5)
            if i != j and poset.leq[i, j]
        }
        assert strict == LOCAL5_ORDER
        assert poset.least == 0

    def test_reflexive_for_any_valid_table(self):
        poset = bck_order(star_table(EMBED9_STAR))
        assert poset.leq.diagonal().all()

    def test_semi4_antichain_over_theta(self):
        poset = bck_order(star_table(SEMI4_STAR))
        for i, j in itertools.permutations(range(1, 4), 2):
            assert not poset.leq[i, j]
        assert poset.leq[0].all()

    def test_labels_carried(self):
        poset = bck_order(star_table(LOCAL5_STAR, labels=("θ", "a", "b", "c", "d")))
        assert poset.labels == ("θ", "a", "b", "c", "d")


class TestAreIsomorphic:
    def test_identity(self):
        t = star_table(SEMI4_STAR)
        result = are_isomorphic(t, t)
        assert result.isomorphic
        assert result.mapping == (0, 1, 2, 3)

    def test_antichain_relabeling(self):
        t = star_table(SEMI4_STAR)
        # swap elements a and b in the table
        perm = np.array([0, 2, 1, 3])
        swapped = perm[SEMI4_STAR[perm[:, None], perm[None, :]]]
        result = are_isomorphic(t, star_table(swapped))
        assert result.isomorphic
        mapping = np.array(result.mapping)
        assert np.array_equal(
            mapping[SEMI4_STAR], swapped[mapping[:, None], mapping[None, :]]
        )

    def test_chain_vs_antichain(self):
        # oracle: check both theta-fixing bijections of 3 elements by hand
        chain, anti = np.array(CHAIN3), np.array(ANTICHAIN3)
        for perm in ([0, 1, 2], [0, 2, 1]):
            p = np.array(perm)
            assert not np.array_equal(p[chain], anti[p[:, None], p[None, :]])
        result = are_isomorphic(star_table(CHAIN3), star_table(ANTICHAIN3))
        assert not result.isomorphic
        assert result.mapping is None

    def test_size_mismatch(self):
        assert not are_isomorphic(star_table(CHAIN3), star_table([[0]])).isomorphic

    def test_kind_mismatch(self):
        with pytest.raises(UsageError):
            are_isomorphic(star_table(CHAIN3), dualize(star_table(CHAIN3)))

    def test_symmetry_and_mapping_validity(self):
        rng = np.random.default_rng(17)
        tables = []
        for _ in range(12):
            n = int(rng.integers(2, 7))
            leq = np.eye(n, dtype=bool)
            leq[0] = True
            for i in range(1, n):
                for j in range(1, n):
                    if i < j and rng.random() < 0.4:
                        leq[i, j] = True
            closure = leq.copy()
            for k in range(n):
                closure |= np.outer(closure[:, k], closure[k, :])
            tables.append(poset_to_bck(Poset(leq=closure, least=0)))
        for t1 in tables:
            for t2 in tables:
                r12 = are_isomorphic(t1, t2)
                r21 = are_isomorphic(t2, t1)
                assert r12.isomorphic == r21.isomorphic
                if r12.isomorphic:
                    m = np.array(r12.mapping)
                    assert sorted(r12.mapping) == list(range(t1.n))
                    assert np.array_equal(
                        m[t1.table], t2.table[m[:, None], m[None, :]]
                    )


class TestRelabelInvariance:
    def test_verify_axioms_invariant_under_relabeling(self):
        rng = np.random.default_rng(23)
        t = EMBED9_STAR
        for _ in range(10):
            perm = np.concatenate(([0], rng.permutation(np.arange(1, 9))))
            relabeled = perm[t[np.argsort(perm)[:, None], np.argsort(perm)[None, :]]]
            assert verify_axioms(star_table(relabeled), "bck").passed
