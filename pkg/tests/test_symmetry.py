import itertools
import math

import numpy as np
import pytest

from photondof import (
    DofPartition,
    DofSchema,
    FirstQuantizedTensor,
    SchemaError,
    ZeroStateError,
    build_ghz,
    build_noon,
    build_pdc_four_photon,
    build_pdc_two_photon,
    build_singlet,
    check_bosonic_symmetry,
    check_single_dof_symmetry,
    project_doubly_symmetric,
    schmidt_analysis,
    to_first_quantized,
)
from photondof.fock import multiset_permutations
from photondof.symmetry import ENTANGLED, PRODUCT_FORM, doubly_symmetric_overlap, factorization_report
from conftest import random_state
from oracles import dense_doubly_symmetric, dense_from_state


def fq(s):
    return to_first_quantized(s)


def pol_split(s):
    return DofPartition.split(s.schema, "pol")


# --- partitions --------------------------------------------------------------


def test_partition_validation():
    schema = build_pdc_two_photon("point").schema
    with pytest.raises(SchemaError):
        DofPartition(["pol"], ["pol", "freq"])
    with pytest.raises(SchemaError):
        DofPartition([], ["pol"])
    with pytest.raises(SchemaError):
        DofPartition(["pol"], ["freq"]).positions(schema)  # spatial uncovered
    with pytest.raises(SchemaError):
        DofPartition.split(schema, "colour")
    p = DofPartition.split(schema, "pol")
    assert p.describe(schema) == "pol|spatial,freq"


# --- bosonic symmetry ------------------------------------------------------


def test_bosonic_symmetry_examples():
    assert check_bosonic_symmetry(fq(build_pdc_four_photon("uniform:2"))).max_violation < 1e-12
    assert check_bosonic_symmetry(fq(build_singlet())).passed
    line = DofSchema([("mode", ["a1", "a2"])])
    a1, a2 = (0,), (1,)
    rep = check_bosonic_symmetry(FirstQuantizedTensor(line, 2, {(a1, a2): 1.0}))
    assert not rep.passed
    assert rep.max_violation == pytest.approx(1.0)
    assert set(rep.worst_pair) == {(a1, a2), (a2, a1)}


# --- single-DOF symmetry ---------------------------------------------------


def test_single_dof_symmetry_examples():
    psi2 = build_pdc_two_photon("uniform:3")
    assert check_single_dof_symmetry(fq(psi2), pol_split(psi2)).passed

    singlet = build_singlet()
    rep = check_single_dof_symmetry(fq(singlet), pol_split(singlet))
    assert not rep.passed
    # the swap flips the sign: |f - (-f)| = 2|f| = 2 * 1/2
    assert rep.max_violation == pytest.approx(1.0)

    psi4 = build_pdc_four_photon("uniform:2")
    rep = check_single_dof_symmetry(fq(psi4), pol_split(psi4))
    assert not rep.passed
    key, swapped = rep.worst_pair
    t = fq(psi4)
    assert abs(t.get(key) - t.get(swapped)) == pytest.approx(rep.max_violation)


def test_single_dof_violation_is_enumerated_exactly():
    # Psi4, K=1/2: tuple (H w0, H w0, V w1, V w1) has f != 0 but swapping the
    # frequencies of slots 2 and 3 lands on (H w0, H w1, V w0, V w1) which is absent.
    psi4 = build_pdc_four_photon("uniform:2")
    sc = psi4.schema
    t = fq(psi4)
    key = (sc.mode("S", "H", "w0"), sc.mode("S", "H", "w0"), sc.mode("S", "V", "w1"), sc.mode("S", "V", "w1"))
    swapped = (sc.mode("S", "H", "w0"), sc.mode("S", "H", "w1"), sc.mode("S", "V", "w0"), sc.mode("S", "V", "w1"))
    assert abs(t.get(key)) > 0.05
    assert t.get(swapped) == 0


# --- Schmidt analysis ------------------------------------------------------


def test_schmidt_noon4():
    s = build_noon(4)
    rep = schmidt_analysis(fq(s), pol_split(s))
    assert rep.rank == 1
    assert rep.verdict == PRODUCT_FORM
    spatial = (s.schema.label_index("spatial", "S"),)
    assert list(rep.right_factor) == [(spatial,) * 4]
    assert rep.left_symmetry == rep.right_symmetry == "symmetric"


def test_schmidt_singlet_antisymmetric_factors():
    s = build_singlet()
    rep = schmidt_analysis(fq(s), pol_split(s))
    assert rep.rank == 1
    assert rep.left_symmetry == "antisymmetric"
    assert rep.right_symmetry == "antisymmetric"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_schmidt_ghz_rank_one(n):
    s = build_ghz(n)
    rep = schmidt_analysis(fq(s), pol_split(s))
    assert rep.rank == 1
    assert rep.left_symmetry == rep.right_symmetry == "symmetric"


def test_schmidt_psi4_entangled_matches_dense_svd():
    s = build_pdc_four_photon("uniform:2")
    rep = schmidt_analysis(fq(s), pol_split(s))
    assert rep.rank >= 2
    assert rep.verdict == ENTANGLED
    # oracle: dense tensor over (spatial, pol, freq) modes, axes regrouped by hand
    dense = dense_from_state(s).reshape((1, 2, 2) * 4)
    pol_axes = [1, 4, 7, 10]
    rest_axes = [0, 2, 3, 5, 6, 8, 9, 11]
    mat = dense.transpose(pol_axes + rest_axes).reshape(2**4, 2**4)
    sv = np.linalg.svd(mat, compute_uv=False)
    want = sv[sv > 1e-9 * sv[0]]
    np.testing.assert_allclose(rep.singular_values[: len(want)], want, atol=1e-12)
    assert rep.rank == len(want)


def test_schmidt_zero_state():
    schema = build_noon(2).schema
    with pytest.raises(ZeroStateError):
        schmidt_analysis(FirstQuantizedTensor(schema, 2, {}), DofPartition(["pol"], ["spatial"]))


def test_schmidt_conserves_norm_and_rank_is_scale_invariant(rng, small_schema):
    p = DofPartition.split(small_schema, "pol")
    for _ in range(30):
        s = random_state(rng, small_schema, int(rng.integers(1, 4)))
        t = fq(s)
        rep = schmidt_analysis(t, p)
        assert sum(x * x for x in rep.singular_values) == pytest.approx(t.norm_squared(), rel=1e-9)
        scaled = fq(s * (3.7 * np.exp(1j * 0.83)))
        assert schmidt_analysis(scaled, p).rank == rep.rank
    for s in (build_noon(3), build_ghz(3), build_pdc_two_photon("uniform:2")):
        for c in (1e-6, 2.5, np.exp(2.1j)):
            assert schmidt_analysis(fq(s * c), pol_split(s)).rank == 1


# --- doubly-symmetric projection ------------------------------------------


@pytest.mark.parametrize(
    "state",
    [
        build_pdc_two_photon("uniform:3"),
        build_ghz(2),
        build_ghz(4),
        build_pdc_four_photon("point"),
        build_noon(4),
    ],
    ids=["psi2", "ghz2", "ghz4", "psi4-K1", "noon4"],
)
def test_doubly_symmetric_states_have_no_remainder(state):
    sym, rem = project_doubly_symmetric(fq(state), pol_split(state))
    assert rem.norm() < 1e-9
    assert sym.norm_squared() == pytest.approx(1.0)


def _random_product_tensor(rng, schema, n):
    """Symmetric pol factor times symmetric (spatial, freq) factor, laid out slotwise."""
    pol_cfg = tuple(sorted(int(x) for x in rng.integers(0, 2, size=n)))
    rest = [(int(a), int(b)) for a, b in zip(rng.integers(0, 2, size=n), rng.integers(0, 3, size=n))]
    right = {}
    for cfg, c in ((tuple(sorted(rest)), complex(rng.normal(), rng.normal())),
                   (tuple(sorted((a, (b + 1) % 3) for a, b in rest)), 0.4)):
        for ro in multiset_permutations(cfg):
            right[ro] = right.get(ro, 0) + c
    cl = complex(rng.normal(), rng.normal())
    entries = {}
    for lo in multiset_permutations(pol_cfg):
        for ro, cr in right.items():
            entries[tuple((r[0], li, r[1]) for li, r in zip(lo, ro))] = cl * cr
    return FirstQuantizedTensor(schema, n, entries)


def test_product_states_pass_every_check(rng, small_schema):
    p = DofPartition.split(small_schema, "pol")
    q = DofPartition(p.right, p.left)
    for _ in range(25):
        t = _random_product_tensor(rng, small_schema, int(rng.integers(2, 5)))
        assert check_bosonic_symmetry(t).passed
        assert check_single_dof_symmetry(t, p).passed and check_single_dof_symmetry(t, q).passed
        rep = schmidt_analysis(t, p)
        assert rep.rank == 1 and rep.left_symmetry == rep.right_symmetry == "symmetric"
        _, rem = project_doubly_symmetric(t, p)
        assert rem.norm() < 1e-9 * t.norm()


def test_projection_properties_on_random_states(rng, small_schema):
    p = DofPartition.split(small_schema, "pol")
    for _ in range(40):
        t = fq(random_state(rng, small_schema, int(rng.integers(1, 5))))
        sym, rem = project_doubly_symmetric(t, p)
        # t - sym - rem == 0
        assert t.subtract(sym).subtract(rem).norm() < 1e-13
        assert abs(sym.inner(rem)) < 1e-10 * max(1.0, t.norm_squared())
        _, rem2 = project_doubly_symmetric(sym, p)
        assert rem2.norm() < 1e-12
        assert check_bosonic_symmetry(sym).passed


@pytest.mark.parametrize("n", [2, 3])
def test_projection_matches_dense_oracle(rng, small_schema, n):
    p = DofPartition.split(small_schema, "pol")
    s = random_state(rng, small_schema, n)
    want = dense_doubly_symmetric(dense_from_state(s), n, (2, 2, 3), {1})
    sym, _ = project_doubly_symmetric(fq(s), p)
    modes = small_schema.all_modes()
    for idx in itertools.product(range(12), repeat=n):
        assert sym.get(tuple(modes[i] for i in idx)) == pytest.approx(want[idx], abs=1e-12)


# Fraction of |Psi4|^2 (K = 1/2) kept by the doubly symmetric projection, frozen
# from oracles.dense_doubly_symmetric. For comparison |A/2|^2 / |Psi4|^2 = 10/12,
# so the projection is not the A part.
PSI4_K_HALF_OVERLAP = 8.0 / 9.0


def test_psi4_doubly_symmetric_overlap_is_recorded():
    s = build_pdc_four_photon("uniform:2")
    ov = doubly_symmetric_overlap(fq(s), pol_split(s))
    assert ov == pytest.approx(PSI4_K_HALF_OVERLAP, abs=1e-12)


def test_factorization_report_document():
    s = build_noon(4)
    doc = factorization_report(fq(s), pol_split(s))
    assert doc["verdict"] == "product form"
    assert doc["rank"] == 1
    assert doc["partition"] == {"left": ["pol"], "right": ["spatial"]}
    assert doc["single_dof_symmetric"]["right_labels_swapped"] is True
    assert doc["factors"]["right"]["entries"] == [{"tuple": ["S"] * 4, "amplitude": [1.0, 0.0]}]
    psi4 = build_pdc_four_photon("uniform:2")
    doc = factorization_report(fq(psi4), pol_split(psi4))
    assert doc["verdict"] == "entangled between DOF groups"
    assert "factors" not in doc
    assert math.isclose(sum(x * x for x in doc["singular_values"]), 1.0, rel_tol=1e-9)
