import math

import numpy as np
import pytest

from photondof import (
    DofSchema,
    FockKet,
    KValue,
    ParseError,
    ProfileError,
    SchemaError,
    SpectralProfile,
    add,
    build_four_photon_parts,
    build_ghz,
    build_noon,
    build_pdc_four_photon,
    build_pdc_two_photon,
    build_singlet,
    compute_K,
    inner_product,
    make_profile,
    to_first_quantized,
)
from photondof.states import (
    build_polarization_fock,
    build_state,
    format_profile,
    load_profile,
    parse_profile_text,
)
from oracles import dense_from_polynomial, dense_from_state, pdc_four_terms

PROFILES = ["point", "uniform:2", "uniform:3", "uniform:4", "gaussian:5:1.3", [0.8**0.5, 0.2**0.5]]


# --- profiles and K ---------------------------------------------------------


def test_k_examples():
    assert compute_K(make_profile("uniform:4")) == pytest.approx(0.25, abs=1e-15)
    assert compute_K(make_profile("point")) == 1.0
    assert compute_K(make_profile([math.sqrt(0.8), math.sqrt(0.2)])) == pytest.approx(0.68, abs=1e-15)
    assert isinstance(compute_K(make_profile("uniform:2")), KValue)


def test_k_is_one_only_for_point_mass():
    assert compute_K(SpectralProfile.custom([0.0, 1.0, 0.0])) == 1.0
    assert compute_K(SpectralProfile.custom([1.0, 1e-3])) < 1.0


def test_k_monotone_under_refinement():
    ks = [compute_K(SpectralProfile.uniform(d)) for d in range(1, 12)]
    assert all(a > b for a, b in zip(ks, ks[1:]))


def test_kvalue_range():
    with pytest.raises(ProfileError):
        KValue(0.0)
    with pytest.raises(ProfileError):
        KValue(1.5)


def test_gaussian_discretisation():
    p = SpectralProfile.gaussian(5, 1.3)
    i = np.arange(5)
    want = np.exp(-((i - 2) ** 2) / (2 * 1.3**2))
    np.testing.assert_allclose(p.amplitudes, want / np.linalg.norm(want), atol=1e-15)
    assert p.labels == ("w0", "w1", "w2", "w3", "w4")


@pytest.mark.parametrize(
    "bad",
    [
        lambda: SpectralProfile(("a", "b"), (1.0, 1.0)),
        lambda: SpectralProfile(("a",), (1j,)),
        lambda: SpectralProfile(("a", "a"), (0.6, 0.8)),
        lambda: SpectralProfile.custom([0.0, 0.0]),
        lambda: make_profile("uniform:0"),
        lambda: make_profile("uniform:x"),
        lambda: make_profile("lorentz:3"),
        lambda: make_profile("gaussian:3:0"),
    ],
)
def test_profile_errors(bad):
    with pytest.raises(ProfileError):
        bad()


def test_profile_file_round_trip(tmp_path):
    p = make_profile("gaussian:4:0.9")
    path = tmp_path / "p.txt"
    path.write_text(format_profile(p))
    back = load_profile(path)
    assert back.labels == p.labels
    np.testing.assert_allclose(back.amplitudes, p.amplitudes, atol=1e-12)


def test_profile_file_normalisation_flag():
    text = "# two lines\nred 3\nblue 4\n"
    with pytest.raises(ProfileError):
        parse_profile_text(text)
    p = parse_profile_text(text, normalize=True)
    assert p.amplitudes == pytest.approx((0.6, 0.8))
    assert p.labels == ("red", "blue")


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("a 0.6\nb\n", 2),
        ("a 0.6\nb zero\n", 2),
        ("a 0.6\na 0.8\n", 2),
        ("\n\na 1 2\n", 3),
        ("a inf\n", 1),
    ],
)
def test_profile_file_parse_errors(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_profile_text(text)
    assert info.value.lineno == lineno


# --- NOON and GHZ ------------------------------------------------------------


def test_noon_builder():
    s = build_noon(4)
    sc = s.schema
    assert dict(s.items()) == pytest.approx({
        FockKet({sc.mode("S", "H"): 4}): 2**-0.5,
        FockKet({sc.mode("S", "V"): 4}): 2**-0.5,
    })
    one = build_noon(1)
    assert one.photon_number == 1 and len(one) == 2
    assert one.norm() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(SchemaError):
        build_noon(2, schema=DofSchema([("pol", ["H", "V"])]))
    with pytest.raises(SchemaError):
        build_noon(2, schema=DofSchema([("spatial", ["S"]), ("pol", ["R", "L"])]))


def test_noon_raw_normalisation():
    # (a^dag_H^N + a^dag_V^N)|vac> / sqrt(2 N!) is already unit norm
    for n in range(1, 7):
        assert build_noon(n, normalize=False).norm() == pytest.approx(1.0, abs=1e-12)


def test_ghz_builder():
    s = build_ghz(3)
    assert len(s) == 2
    assert all(abs(a - 2**-0.5) < 1e-15 for _, a in s.items())
    for ket in s:
        assert sorted(m[0] for m, _ in ket) == [0, 1, 2]
    with pytest.raises(SchemaError):
        build_ghz(3, schema=DofSchema([("spatial", ["S1", "S2"]), ("pol", ["H", "V"])]))


def test_ghz1_is_noon1():
    ghz = build_ghz(1)
    noon = build_noon(1, schema=ghz.schema)
    assert ghz.allclose(noon, atol=1e-15)


# --- PDC states --------------------------------------------------------------


def test_pdc_two_photon():
    s = build_pdc_two_photon("point")
    assert len(s) == 2
    assert all(a == pytest.approx(2**-0.5) for _, a in s.items())
    s = build_pdc_two_photon("uniform:2")
    assert len(s) == 4
    assert all(a == pytest.approx(0.5) for _, a in s.items())
    assert build_pdc_two_photon("uniform:3", normalize=False).norm() == pytest.approx(math.sqrt(2))


def test_pdc_four_photon_support():
    s = build_pdc_four_photon("point")
    sc = s.schema
    h, v = sc.mode("S", "H", "w0"), sc.mode("S", "V", "w0")
    assert set(s) == {FockKet({h: 4}), FockKet({v: 4}), FockKet({h: 2, v: 2})}

    s = build_pdc_four_photon("uniform:2")
    sc = s.schema
    h0, h1 = sc.mode("S", "H", "w0"), sc.mode("S", "H", "w1")
    v0, v1 = sc.mode("S", "V", "w0"), sc.mode("S", "V", "w1")
    assert FockKet({h0: 2, v1: 2}) in s.terms
    assert FockKet({h1: 2, v0: 2}) in s.terms
    assert FockKet({h0: 1, v0: 1, h1: 1, v1: 1}) not in s.terms


@pytest.mark.parametrize("kind", PROFILES)
def test_pdc_four_photon_raw_norm_oracle(kind):
    profile = make_profile(kind)
    s = build_pdc_four_photon(profile, normalize=False)
    dense = dense_from_polynomial(s.schema, 4, pdc_four_terms(s.schema, profile))
    k = compute_K(profile)
    assert s.norm_squared() == pytest.approx(np.vdot(dense, dense).real, rel=1e-12)
    assert s.norm_squared() == pytest.approx(8 * (1 + k), rel=1e-12)
    # same state, not only the same norm
    np.testing.assert_allclose(dense_from_state(s), dense, atol=1e-12)


@pytest.mark.parametrize("kind", PROFILES)
def test_four_photon_parts_identities(kind):
    profile = make_profile(kind)
    k = compute_K(profile)
    a, b = build_four_photon_parts(profile)
    raw = build_pdc_four_photon(profile, normalize=False)
    assert add(a, b, 0.5, 0.5).max_abs_diff(raw) < 1e-12
    assert abs(inner_product(a, b)) < 1e-12
    assert set(a.terms).isdisjoint(b.terms)
    assert inner_product(b, b).real == pytest.approx(16 * (1 - k), abs=1e-10)
    assert inner_product(a, a).real == pytest.approx(16 + 48 * k, abs=1e-10)


def test_parts_at_k_half_enumerated():
    a, b = build_four_photon_parts("uniform:2")
    assert inner_product(b, b).real == pytest.approx(8.0, abs=1e-12)
    assert inner_product(a, b) == 0


def test_point_profile_has_no_b_part():
    _, b = build_four_photon_parts("point")
    assert b.is_zero()


@pytest.mark.parametrize("kind", PROFILES)
def test_f_factor_norm(kind):
    # A = (|HHHH> + |VVVV>) F + ..., so |F|^2 is A's first-quantized weight on all-H tuples.
    profile = make_profile(kind)
    a, _ = build_four_photon_parts(profile)
    h = a.schema.label_index("pol", "H")
    pp = a.schema.position("pol")
    t = to_first_quantized(a)
    f2 = sum(abs(v) ** 2 for key, v in t.items() if all(m[pp] == h for m in key))
    dense = dense_from_state(a).reshape((1, 2, profile.d) * 4)
    f2_oracle = np.sum(np.abs(dense[0, 0, :, 0, 0, :, 0, 0, :, 0, 0, :]) ** 2)
    k = compute_K(profile)
    assert f2 == pytest.approx(8 + 16 * k, abs=1e-9)
    assert f2_oracle == pytest.approx(8 + 16 * k, abs=1e-9)


@pytest.mark.parametrize(
    "state",
    [build_noon(3), build_ghz(4), build_pdc_two_photon("uniform:3"), build_pdc_four_photon("gaussian:3:1"),
     build_singlet(), build_polarization_fock(2, 2)],
    ids=["noon", "ghz", "pdc2", "pdc4", "singlet", "hhvv"],
)
def test_builders_unit_norm_and_deterministic(state):
    assert state.norm() == pytest.approx(1.0, abs=1e-12)
    keys = list(state)
    assert keys == sorted(keys)


def test_build_state_dispatch():
    assert build_state("noon", n=2).allclose(build_noon(2))
    assert build_state("pdc4", profile=make_profile("uniform:2")).allclose(build_pdc_four_photon("uniform:2"))
    with pytest.raises(ValueError):
        build_state("ghz")
    with pytest.raises(ValueError):
        build_state("w")
