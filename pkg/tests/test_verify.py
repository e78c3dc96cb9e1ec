"""Tests for the cross-module verification harness.

Oracles: subspace counts come from the q-binomial product formula checked
against brute-force point-set deduplication on a small case; witness chains
are replayed through the minor machinery independently of the constructors'
own internal replay; localization censuses are cross-counted against the
actual localization clutter; sweep verdicts are cross-checked against direct
polyhedral computation where the ground is small.
"""
from __future__ import annotations

import itertools
import json
import random

import pytest

from clutterforge.clutter import (
    Clutter,
    MinorSpec,
    apply_chain,
    builtin,
    find_minor,
    is_isomorphic,
    localization,
    mult,
)
from clutterforge.errors import (
    BudgetExceeded,
    NoSeriesPair,
    PreconditionViolated,
    VerificationFailure,
    WrongField,
    WrongFieldClass,
    WrongShape,
)
from clutterforge.gf import build_field
from clutterforge.matroid import matroid_of
from clutterforge.polyhedral import is_ideal
from clutterforge.verify import (
    LocalizationProfile,
    TheoremReport,
    c5sq_witness,
    count_subspaces,
    delta3_witness_k4e,
    delta3_witness_u24,
    enumerate_subspaces,
    gaussian_binomial,
    instance_id,
    localization_profile,
    replication_tau2_report,
    series_extension_pair,
    summarize_certificate,
    sweep_theorem,
    triple_condition_probe,
    verify_theorem,
)
from clutterforge.vspace import disjoint_support_basis, permute, span


@pytest.fixture(scope="module")
def f16():
    return build_field(16)


@pytest.fixture(scope="module")
def r11(f2):
    return span(f2, 3, [(0, 1, 1), (1, 0, 1)])


@pytest.fixture(scope="module")
def zero_sum_gf3(f3):
    return span(f3, 3, [(1, 1, 0), (1, 0, 1)])


@pytest.fixture(scope="module")
def zero_sum_gf4(f4):
    return span(f4, 3, [(1, 1, 0), (1, 0, 1)])


@pytest.fixture(scope="module")
def zero_sum_gf8(f8):
    return span(f8, 3, [(1, 1, 0), (1, 0, 1)])


# ---------------------------------------------------------------------------
# subspace enumeration
# ---------------------------------------------------------------------------

class TestEnumeration:
    def test_gaussian_binomial_small_values(self):
        assert gaussian_binomial(3, 1, 2) == 7
        assert gaussian_binomial(3, 2, 2) == 7
        assert gaussian_binomial(4, 2, 3) == 130
        assert gaussian_binomial(2, 1, 5) == 6
        assert gaussian_binomial(3, 0, 9) == 1

    def test_counts_match_enumeration(self):
        for q, n, expect in [(2, 3, 16), (3, 3, 28), (4, 3, 44), (3, 4, 212), (5, 2, 8)]:
            assert count_subspaces(q, n) == expect
            spaces = list(enumerate_subspaces(q, n))
            assert len(spaces) == expect
            assert len(set(spaces)) == expect

    def test_enumeration_is_exhaustive_by_point_sets(self, f2):
        seen = {frozenset(s.points()) for s in enumerate_subspaces(2, 3)}
        assert len(seen) == 16
        brute = set()
        vecs = list(itertools.product(range(2), repeat=3))
        for gens in itertools.chain.from_iterable(
            itertools.combinations(vecs, r) for r in range(4)
        ):
            brute.add(frozenset(span(f2, 3, gens).points()))
        assert seen == brute

    def test_budget_raises(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_subspaces(3, 4, budget=100))

    def test_dimension_order(self):
        dims = [s.dim for s in enumerate_subspaces(2, 2)]
        assert dims == sorted(dims)


# ---------------------------------------------------------------------------
# triple condition probe
# ---------------------------------------------------------------------------

class TestTripleProbe:
    def test_completion_found(self, r11):
        d = triple_condition_probe(r11, (0, 0, 0), (0, 1, 1), (1, 0, 1), 0, 2, 1)
        assert d == (1, 1, 0)

    def test_completion_satisfies_two_of_three(self, r11):
        a, b, c = (0, 0, 0), (0, 1, 1), (1, 0, 1)
        i, j, k = 0, 2, 1
        d = triple_condition_probe(r11, a, b, c, i, j, k)
        hits = (d[i] == c[i]) + (d[j] == a[j]) + (d[k] == b[k])
        assert hits >= 2
        assert all(d[p] in {a[p], b[p], c[p]} for p in range(3))

    def test_point_outside_space_rejected(self, r11):
        with pytest.raises(PreconditionViolated):
            triple_condition_probe(r11, (1, 0, 0), (0, 1, 1), (1, 0, 1), 0, 2, 1)

    def test_duplicate_points_rejected(self, r11):
        with pytest.raises(PreconditionViolated):
            triple_condition_probe(r11, (0, 0, 0), (0, 0, 0), (1, 0, 1), 0, 2, 1)

    def test_duplicate_coordinates_rejected(self, r11):
        with pytest.raises(PreconditionViolated):
            triple_condition_probe(r11, (0, 0, 0), (0, 1, 1), (1, 0, 1), 0, 0, 1)

    def test_coordinate_out_of_range_rejected(self, r11):
        with pytest.raises(PreconditionViolated):
            triple_condition_probe(r11, (0, 0, 0), (0, 1, 1), (1, 0, 1), 0, 2, 5)

    def test_wrong_length_point_rejected(self, r11):
        with pytest.raises(PreconditionViolated):
            triple_condition_probe(r11, (0, 0), (0, 1, 1), (1, 0, 1), 0, 2, 1)

    def test_agreement_pattern_must_hold(self, r11):
        with pytest.raises(PreconditionViolated):
            triple_condition_probe(r11, (0, 0, 0), (0, 1, 1), (1, 0, 1), 1, 2, 0)

    def test_no_completion_on_blocked_triple(self, f4):
        # inside a U24 point set the constructed triple has no completion
        space = span(f4, 4, [(1, 0, 1, 1), (0, 1, 1, 2)])
        f = f4
        v1, v2 = space.basis
        a = f.vec_scale(f.mul(f.inv(v1[2]), v2[2]), v1)
        b = v2
        c = f.vec_add(a, b)
        assert triple_condition_probe(space, a, b, c, 2, 1, 0) is None


# ---------------------------------------------------------------------------
# triangle witness: four coordinates, all 3-subsets minimally dependent
# ---------------------------------------------------------------------------

class TestDelta3WitnessU24:
    def test_example_chain_replays(self, f4):
        space = span(f4, 4, [(1, 0, 1, 1), (0, 1, 1, 2)])
        chain = delta3_witness_u24(space)
        assert len(chain) == 2
        final = apply_chain(mult(space), chain)
        assert is_isomorphic(final, builtin("delta3")) is not None

    def test_second_contraction_has_three_elements(self, f4):
        space = span(f4, 4, [(1, 0, 1, 1), (0, 1, 1, 2)])
        first, second = delta3_witness_u24(space)
        assert len(second.contract) == 3 and not second.delete

    def test_odd_field_rejected(self, f3):
        space = span(f3, 4, [(1, 0, 1, 1), (0, 1, 1, 2)])
        with pytest.raises(WrongField):
            delta3_witness_u24(space)

    def test_wrong_matroid_rejected(self, f4):
        space = span(f4, 4, [(1, 0, 1, 0), (0, 1, 0, 1)])
        with pytest.raises(WrongShape):
            delta3_witness_u24(space)

    def test_wrong_coordinate_count_rejected(self, f4, zero_sum_gf4):
        with pytest.raises(WrongShape):
            delta3_witness_u24(zero_sum_gf4)

    def test_all_qualifying_planes_of_gf4_4(self):
        wins = rejects = 0
        for space in enumerate_subspaces(4, 4):
            if space.dim != 2:
                continue
            try:
                chain = delta3_witness_u24(space)
            except WrongShape:
                m = matroid_of(space)
                assert any(len(c) <= 2 for c in m.circuits)
                rejects += 1
                continue
            final = apply_chain(mult(space), chain)
            assert is_isomorphic(final, builtin("delta3")) is not None
            wins += 1
        assert wins == 54 and rejects == 303

    def test_gf8_instance(self, f8):
        space = span(f8, 4, [(1, 0, 1, 3), (0, 1, 5, 2)])
        chain = delta3_witness_u24(space)
        final = apply_chain(mult(space), chain)
        assert is_isomorphic(final, builtin("delta3")) is not None


# ---------------------------------------------------------------------------
# triangle witness: five coordinates, doubled-triangle minimal supports
# ---------------------------------------------------------------------------

class TestDelta3WitnessK4e:
    BASE = [(1, 0, 0, 1, 1), (0, 1, 0, 1, 0), (0, 0, 1, 0, 1)]

    def test_example_chain_replays(self, f4):
        space = span(f4, 5, self.BASE)
        chain = delta3_witness_k4e(space)
        assert len(chain) == 3
        final = apply_chain(mult(space), chain)
        assert is_isomorphic(final, builtin("delta3")) is not None

    def test_example_matroid_shape(self, f4):
        space = span(f4, 5, self.BASE)
        m = matroid_of(space)
        sizes = sorted(len(c) for c in m.circuits)
        assert sizes == [2, 2, 3, 3, 3, 3]

    def test_all_coordinate_permutations(self, f4):
        base = span(f4, 5, self.BASE)
        for order in itertools.permutations(range(5)):
            space = permute(base, order)
            chain = delta3_witness_k4e(space)
            final = apply_chain(mult(space), chain)
            assert is_isomorphic(final, builtin("delta3")) is not None

    def test_column_rescalings(self, f4):
        for col, scale in [(0, 2), (3, 3), (4, 2)]:
            rows = [
                tuple(f4.mul(scale, v) if idx == col else v for idx, v in enumerate(row))
                for row in self.BASE
            ]
            space = span(f4, 5, rows)
            chain = delta3_witness_k4e(space)
            final = apply_chain(mult(space), chain)
            assert is_isomorphic(final, builtin("delta3")) is not None

    def test_gf8_instance(self, f8):
        space = span(f8, 5, self.BASE)
        chain = delta3_witness_k4e(space)
        final = apply_chain(mult(space), chain)
        assert is_isomorphic(final, builtin("delta3")) is not None

    def test_small_field_rejected(self, f2):
        space = span(f2, 5, self.BASE)
        with pytest.raises(WrongField):
            delta3_witness_k4e(space)

    def test_odd_field_rejected(self, f3):
        space = span(f3, 5, self.BASE)
        with pytest.raises(WrongField):
            delta3_witness_k4e(space)

    def test_three_coordinate_space_rejected(self, zero_sum_gf4):
        with pytest.raises(WrongShape):
            delta3_witness_k4e(zero_sum_gf4)

    def test_wrong_matroid_rejected(self, f4):
        space = span(f4, 5, [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 1, 1)])
        with pytest.raises(WrongShape):
            delta3_witness_k4e(space)


# ---------------------------------------------------------------------------
# 5-cycle-square witness
# ---------------------------------------------------------------------------

EXPECTED_SEVEN = Clutter(range(7), [{0, 1}, {1, 2}, {2, 3}, {3, 4, 6}, {0, 4, 5}])


class TestC5sqWitness:
    def test_default_chain_replays(self, zero_sum_gf8):
        chain = c5sq_witness(zero_sum_gf8)
        assert len(chain) == 3
        final = apply_chain(mult(zero_sum_gf8), chain)
        assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_explicit_alpha(self, zero_sum_gf8):
        chain = c5sq_witness(zero_sum_gf8, alpha=(1, 0, 0))
        final = apply_chain(mult(zero_sum_gf8), chain)
        assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_intermediate_seven_element_structure(self, zero_sum_gf8):
        chain = c5sq_witness(zero_sum_gf8, alpha=(1, 0, 0))
        middle = apply_chain(mult(zero_sum_gf8), chain[:2])
        assert len(middle.ground) == 7
        assert len(middle.members) == 5
        assert is_isomorphic(middle, EXPECTED_SEVEN) is not None

    def test_many_alphas(self, f8, zero_sum_gf8):
        outside = [
            p
            for p in itertools.product(range(8), repeat=3)
            if not zero_sum_gf8.contains(p)
        ]
        for alpha in outside[:12]:
            chain = c5sq_witness(zero_sum_gf8, alpha=alpha)
            final = apply_chain(mult(zero_sum_gf8), chain)
            assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_scaled_plane(self, f8):
        space = span(f8, 3, [(2, 1, 0), (5, 0, 1)])
        chain = c5sq_witness(space)
        final = apply_chain(mult(space), chain)
        assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_gf16(self, f16):
        space = span(f16, 3, [(1, 1, 0), (1, 0, 1)])
        chain = c5sq_witness(space)
        final = apply_chain(mult(space), chain)
        assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_rng_choices_valid_and_deterministic(self, f16):
        space = span(f16, 3, [(1, 1, 0), (1, 0, 1)])
        assert c5sq_witness(space, rng=7) == c5sq_witness(space, rng=7)
        for seed in range(6):
            chain = c5sq_witness(space, rng=seed)
            final = apply_chain(mult(space), chain)
            assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_rng_object_accepted(self, zero_sum_gf8):
        chain = c5sq_witness(zero_sum_gf8, rng=random.Random(3))
        final = apply_chain(mult(zero_sum_gf8), chain)
        assert is_isomorphic(final, builtin("c5sq")) is not None

    def test_gf4_rejected(self, zero_sum_gf4):
        with pytest.raises(WrongField):
            c5sq_witness(zero_sum_gf4)

    def test_odd_field_rejected(self, zero_sum_gf3):
        with pytest.raises(WrongField):
            c5sq_witness(zero_sum_gf3)

    def test_product_plane_rejected(self, f8):
        space = span(f8, 3, [(1, 0, 0), (0, 1, 1)])
        with pytest.raises(WrongShape):
            c5sq_witness(space)

    def test_full_space_rejected(self, f8):
        space = span(f8, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        with pytest.raises(WrongShape):
            c5sq_witness(space)

    def test_four_coordinates_rejected(self, f8):
        space = span(f8, 4, [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)])
        with pytest.raises(WrongShape):
            c5sq_witness(space)

    def test_alpha_inside_space_rejected(self, zero_sum_gf8):
        with pytest.raises(PreconditionViolated):
            c5sq_witness(zero_sum_gf8, alpha=(0, 0, 0))

    def test_bad_alpha_rejected(self, zero_sum_gf8):
        with pytest.raises(PreconditionViolated):
            c5sq_witness(zero_sum_gf8, alpha=(1, 0))


# ---------------------------------------------------------------------------
# localization profiles
# ---------------------------------------------------------------------------

def _profile_member_total(profile: LocalizationProfile) -> int:
    return (
        len(profile.size_one)
        + sum(len(c.edges) for c in profile.components)
        + len(profile.residual)
    )


class TestLocalizationProfile:
    def test_gf4_three_parts(self, zero_sum_gf4):
        p = localization_profile(zero_sum_gf4, (1, 0, 0))
        assert len(p.size_one) == 3
        assert len(p.components) == 1
        assert len(p.components[0].edges) == 6
        assert p.residual == ()
        actual = localization(zero_sum_gf4, (1, 0, 0))
        assert _profile_member_total(p) == len(actual.members)

    def test_gf8_three_parts(self, zero_sum_gf8):
        p = localization_profile(zero_sum_gf8, (1, 0, 0))
        assert len(p.size_one) == 3
        assert len(p.components) == 3
        assert all(len(c.edges) == 6 for c in p.components)
        assert p.residual and all(len(m) >= 3 for m in p.residual)
        actual = localization(zero_sum_gf8, (1, 0, 0))
        assert _profile_member_total(p) == len(actual.members)

    def test_gf4_four_parts(self, f4):
        space = span(f4, 4, [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)])
        p = localization_profile(space, (1, 0, 0, 0))
        assert len(p.size_one) == 4
        assert len(p.components) == 1
        assert len(p.components[0].edges) == 12
        assert p.residual == ()

    def test_gf8_four_parts(self, f8):
        space = span(f8, 4, [(1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1)])
        p = localization_profile(space, (1, 0, 0, 0))
        assert len(p.components) == 3
        assert all(len(c.edges) == 12 for c in p.components)
        assert len(p.residual) == 96

    def test_component_heads_partition_remaining_values(self, zero_sum_gf8):
        p = localization_profile(zero_sum_gf8, (1, 0, 0))
        f = build_field(8)
        covered = set()
        for comp in p.components:
            beta, partner = comp.head
            assert partner == f.add(beta, p.sigma)
            covered.update(comp.head)
        alpha0 = p.alpha[0]
        assert covered == set(range(8)) - {alpha0, f.add(alpha0, p.sigma)}

    def test_scaled_plane_profile(self, f8):
        space = span(f8, 3, [(2, 1, 0), (5, 0, 1)])
        alpha = (1, 1, 1)
        assert not space.contains(alpha)
        p = localization_profile(space, alpha)
        assert len(p.components) == 3
        actual = localization(space, alpha)
        assert _profile_member_total(p) == len(actual.members)

    def test_every_alpha_outside_gf4(self, zero_sum_gf4):
        for alpha in itertools.product(range(4), repeat=3):
            if zero_sum_gf4.contains(alpha):
                continue
            p = localization_profile(zero_sum_gf4, alpha)
            assert p.residual == () and len(p.components) == 1

    def test_odd_field_rejected(self, zero_sum_gf3):
        with pytest.raises(PreconditionViolated):
            localization_profile(zero_sum_gf3, (1, 0, 0))

    def test_alpha_in_space_rejected(self, zero_sum_gf4):
        with pytest.raises(PreconditionViolated):
            localization_profile(zero_sum_gf4, (0, 1, 1))

    def test_product_plane_rejected(self, f4):
        space = span(f4, 3, [(1, 0, 0), (0, 1, 1)])
        with pytest.raises(PreconditionViolated):
            localization_profile(space, (0, 1, 0))


# ---------------------------------------------------------------------------
# series reduction
# ---------------------------------------------------------------------------

class TestSeriesExtension:
    def test_ideal_pair_gf4(self, f4):
        space = span(f4, 4, [(1, 1, 0, 0), (1, 0, 1, 1)])
        full, reduced = series_extension_pair(space, max_ground=16)
        assert full.n == 4 and reduced.n == 3
        assert is_ideal(mult(full), max_ground=16).integral
        assert is_ideal(mult(reduced), max_ground=16).integral

    def test_non_ideal_pair_gf3(self, f3):
        space = span(f3, 4, [(1, 2, 0, 0), (1, 0, 2, 2)])
        full, reduced = series_extension_pair(space, max_ground=16)
        assert not is_ideal(mult(full), max_ground=16).integral
        assert not is_ideal(mult(reduced), max_ground=16).integral

    def test_no_series_pair(self, zero_sum_gf3):
        with pytest.raises(NoSeriesPair):
            series_extension_pair(zero_sum_gf3)

    def test_budget(self, f8):
        space = span(f8, 4, [(1, 1, 0, 0), (1, 0, 1, 1)])
        with pytest.raises(BudgetExceeded):
            series_extension_pair(space, max_ground=16)


# ---------------------------------------------------------------------------
# replication report
# ---------------------------------------------------------------------------

class TestReplicationReport:
    def test_r11(self, r11):
        rep = replication_tau2_report(r11)
        assert rep.has_packing is False
        assert rep.disjoint_basis is False
        assert rep.ideal is True
        assert rep.minimally_non_packing is True
        assert rep.tau_one == 2
        assert rep.q6_isomorphism is not None

    def test_disjoint_space_packs(self, f3):
        space = span(f3, 3, [(1, 0, 0), (0, 1, 1)])
        rep = replication_tau2_report(space)
        assert rep.has_packing is True
        assert rep.disjoint_basis is True
        assert rep.minimally_non_packing is False
        assert rep.tau_one is None
        assert "covering-number branch inapplicable" in rep.notes

    def test_non_ideal_space_inapplicable(self, zero_sum_gf3):
        rep = replication_tau2_report(zero_sum_gf3)
        assert rep.has_packing is False
        assert rep.ideal is False
        assert rep.tau_one is None

    def test_instance_id_recorded(self, r11):
        rep = replication_tau2_report(r11)
        assert rep.instance == instance_id(r11)


# ---------------------------------------------------------------------------
# three-way equivalence reports
# ---------------------------------------------------------------------------

class TestVerifyTheorem:
    def test_selector_normalization(self, zero_sum_gf3):
        for which in ("1.1", "T1.1", "t1.1"):
            assert verify_theorem(zero_sum_gf3, which).theorem == "1.1"
        with pytest.raises(PreconditionViolated):
            verify_theorem(zero_sum_gf3, "9.9")

    def test_field_class_gates(self, zero_sum_gf3, zero_sum_gf4, zero_sum_gf8):
        with pytest.raises(WrongFieldClass):
            verify_theorem(zero_sum_gf4, "1.1")
        with pytest.raises(WrongFieldClass):
            verify_theorem(zero_sum_gf3, "1.2")
        with pytest.raises(WrongFieldClass):
            verify_theorem(zero_sum_gf8, "1.2")
        with pytest.raises(WrongFieldClass):
            verify_theorem(zero_sum_gf4, "1.3")
        with pytest.raises(WrongFieldClass):
            verify_theorem(zero_sum_gf3, "1.3")

    def test_odd_non_ideal_plane(self, zero_sum_gf3):
        r = verify_theorem(zero_sum_gf3, "1.1")
        assert r.verdicts == {"i": False, "ii": False, "iii": False}
        assert r.agreement and not r.unknown
        name, spec, mapping = r.certificates["iii"]
        assert name == "delta3"
        final = apply_chain(mult(zero_sum_gf3), [spec])
        assert is_isomorphic(final, builtin("delta3")) is not None

    def test_gf4_zero_sum_all_true(self, zero_sum_gf4):
        r = verify_theorem(zero_sum_gf4, "1.2")
        assert r.verdicts == {"i": True, "ii": True, "iii": True}
        assert r.methods["i"] == "exact extreme-point enumeration"

    def test_r11_all_false_with_q6(self, r11):
        r = verify_theorem(r11, "1.4")
        assert r.verdicts == {"i": False, "ii": False, "iii": False}
        assert r.certificates["iii"][0] == "q6"
        assert r.methods["i"].startswith("refuted")

    def test_gf8_witness_route(self, zero_sum_gf8):
        r = verify_theorem(zero_sum_gf8, "1.3")
        assert r.verdicts == {"i": False, "ii": False, "iii": False}
        assert "witness" in r.methods["iii"]
        assert r.methods["i"].startswith("derived")

    def test_gf8_product_derivations(self, f8):
        space = span(f8, 3, [(1, 0, 0), (0, 1, 1)])
        r = verify_theorem(space, "1.3")
        assert r.verdicts == {"i": True, "ii": True, "iii": True}
        assert r.methods["i"].startswith("derived")
        assert r.methods["iii"].startswith("derived")

    def test_report_serializes(self, zero_sum_gf3, r11):
        for rep in (verify_theorem(zero_sum_gf3, "1.1"), verify_theorem(r11, "1.4")):
            data = json.loads(json.dumps(rep.to_dict()))
            assert data["theorem"] == rep.theorem
            assert data["agreement"] is True

    def test_summarize_certificate_handles_minor_spec(self):
        spec = MinorSpec(delete={(0, 1)}, contract={(2, 3)})
        out = summarize_certificate(spec)
        assert out == {"delete": ["(0, 1)"], "contract": ["(2, 3)"]}


class TestSweeps:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_odd_q3(self, n):
        reports = sweep_theorem(3, n, "1.1")
        assert len(reports) == count_subspaces(3, n)
        assert all(r.agreement and not r.unknown for r in reports)

    def test_odd_q5_squares(self):
        reports = sweep_theorem(5, 2, "1.1")
        assert len(reports) == 8
        assert all(r.agreement and not r.unknown for r in reports)

    def test_odd_q5_cubes_with_raised_budget(self):
        reports = sweep_theorem(5, 3, "1.1", minor_budget=3**15)
        assert len(reports) == 64
        assert all(r.agreement and not r.unknown for r in reports)
        assert sum(1 for r in reports if r.cond_ii is False) == 16

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_gf4(self, n):
        reports = sweep_theorem(4, n, "1.2")
        assert len(reports) == count_subspaces(4, n)
        assert all(r.agreement and not r.unknown for r in reports)

    @pytest.mark.parametrize("q", [2, 3])
    def test_flow_statement_cubes(self, q):
        reports = sweep_theorem(q, 3, "1.4")
        assert len(reports) == count_subspaces(q, 3)
        assert all(r.agreement and not r.unknown for r in reports)

    def test_gf8_cubes(self):
        reports = sweep_theorem(8, 3, "1.3")
        assert len(reports) == 148
        assert all(r.agreement and not r.unknown for r in reports)
        witnessed = [r for r in reports if "witness" in r.methods["iii"]]
        assert len(witnessed) == 49
        assert all(r.cond_ii is False for r in witnessed)

    def test_cond_i_matches_direct_idealness(self, subspaces_gf3_3):
        for space, report in zip(subspaces_gf3_3, sweep_theorem(3, 3, "1.1")):
            assert report.cond_i == is_ideal(mult(space)).integral


class TestCrossStatementInvariants:
    def test_localization_equivalence_gf3(self, subspaces_gf3_3):
        for space in subspaces_gf3_3:
            full = is_ideal(mult(space)).integral
            alllo = all(
                is_ideal(localization(space, v)).integral
                for v in itertools.product(range(3), repeat=3)
            )
            assert full == alllo

    def test_localization_equivalence_gf4(self, subspaces_gf4_3):
        for space in subspaces_gf4_3:
            full = is_ideal(mult(space)).integral
            alllo = all(
                is_ideal(localization(space, v)).integral
                for v in itertools.product(range(4), repeat=3)
            )
            assert full == alllo

    def test_no_disjoint_basis_yields_forbidden_minor(
        self, subspaces_gf2_3, subspaces_gf3_3
    ):
        for space in subspaces_gf3_3:
            if disjoint_support_basis(space) is not None:
                continue
            assert find_minor(mult(space), builtin("delta3")) is not None
        for space in subspaces_gf2_3:
            if disjoint_support_basis(space) is not None:
                continue
            hit = find_minor(mult(space), builtin("delta3")) or find_minor(
                mult(space), builtin("q6")
            )
            assert hit is not None
