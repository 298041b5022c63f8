"""Spectral profiles and builders for NOON, GHZ and down-conversion states.

Builders return unit-norm states by default. ``normalize=False`` returns the
literal creation-operator expression instead, whose norm is the raw
normalisation constant (rates computed from raw states differ from the
normalised ones by that overall factor only).
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ParseError, ProfileError, SchemaError
from .fock import (
    CreationMonomial,
    DofSchema,
    FockKet,
    StateVector,
    apply_polynomial,
    normalize as _normalize,
    vacuum,
)

SPATIAL = "spatial"
POL = "pol"
FREQ = "freq"
H, V = "H", "V"

PROFILE_TOL = 1e-10


class KValue(float):
    """``K = sum(phi**4)`` of a normalised profile; lies in (0, 1]."""

    def __new__(cls, value):
        value = float(value)
        if not (0.0 < value <= 1.0 + 1e-12):
            raise ProfileError(f"K must lie in (0, 1], got {value}")
        return super().__new__(cls, min(value, 1.0))


@dataclass(frozen=True)
class SpectralProfile:
    """Real amplitudes over a finite frequency alphabet, ``sum(phi**2) == 1``."""

    labels: tuple
    amplitudes: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        amps = tuple(self.amplitudes)
        if not labels:
            raise ProfileError("profile needs at least one frequency label")
        if len(labels) != len(amps):
            raise ProfileError("labels and amplitudes differ in length")
        if len(set(labels)) != len(labels):
            raise ProfileError("repeated frequency labels")
        clean = []
        for a in amps:
            if isinstance(a, complex):
                if a.imag != 0.0:
                    raise ProfileError("spectral amplitudes must be real")
                a = a.real
            a = float(a)
            if not math.isfinite(a):
                raise ProfileError("spectral amplitudes must be finite")
            clean.append(a)
        total = math.fsum(a * a for a in clean)
        if abs(total - 1.0) > PROFILE_TOL:
            raise ProfileError(f"profile is not normalised: sum(phi^2) = {total!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amplitudes", tuple(clean))

    @classmethod
    def point(cls, label="w0"):
        return cls((label,), (1.0,))

    @classmethod
    def uniform(cls, d):
        if d < 1:
            raise ProfileError("uniform profile needs d >= 1")
        return cls(_default_labels(d), (1.0 / math.sqrt(d),) * d)

    @classmethod
    def gaussian(cls, d, width):
        """``phi_i ~ exp(-(i - c)^2 / (2 width^2))`` on ``d`` labels, ``c`` the centre index."""
        if d < 1:
            raise ProfileError("gaussian profile needs d >= 1")
        if not width > 0:
            raise ProfileError("gaussian width must be positive")
        i = np.arange(d, dtype=float)
        amps = np.exp(-((i - (d - 1) / 2.0) ** 2) / (2.0 * width**2))
        return cls.custom(amps, normalize=True)

    @classmethod
    def custom(cls, amplitudes, labels=None, normalize=True):
        amps = np.asarray(amplitudes, dtype=float)
        if amps.ndim != 1 or amps.size == 0:
            raise ProfileError("custom profile needs a non-empty list of amplitudes")
        norm = math.sqrt(math.fsum(a * a for a in amps))
        if norm == 0.0:
            raise ProfileError("all-zero spectral profile")
        if normalize:
            amps = amps / norm
        labels = _default_labels(amps.size) if labels is None else labels
        return cls(tuple(labels), tuple(float(a) for a in amps))

    @property
    def d(self):
        return len(self.labels)

    @property
    def K(self):
        return compute_K(self)

    def items(self):
        return zip(self.labels, self.amplitudes)


def _default_labels(d):
    return tuple(f"w{i}" for i in range(d))


def compute_K(profile):
    return KValue(math.fsum(a**4 for a in profile.amplitudes))


def make_profile(kind):
    """Profile from ``point``, ``uniform:d``, ``gaussian:d:width`` or a list of amplitudes."""
    if isinstance(kind, SpectralProfile):
        return kind
    if not isinstance(kind, str):
        return SpectralProfile.custom(list(kind))
    parts = kind.strip().split(":")
    name = parts[0].lower()
    try:
        if name == "point" and len(parts) == 1:
            return SpectralProfile.point()
        if name == "uniform" and len(parts) == 2:
            return SpectralProfile.uniform(int(parts[1]))
        if name == "gaussian" and len(parts) == 3:
            return SpectralProfile.gaussian(int(parts[1]), float(parts[2]))
    except ValueError as exc:
        if isinstance(exc, ProfileError):
            raise
        raise ProfileError(f"bad profile parameters in {kind!r}") from exc
    raise ProfileError(f"unknown profile kind {kind!r}")


def parse_profile_text(text, normalize=False):
    """Parse ``<label> <amplitude>`` lines; ``#`` starts a comment."""
    labels, amps = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected '<label> <amplitude>', got {raw!r}", lineno)
        try:
            amp = float(fields[1])
        except ValueError:
            raise ParseError(f"amplitude {fields[1]!r} is not a real number", lineno) from None
        if not math.isfinite(amp):
            raise ParseError("amplitude must be finite", lineno)
        if fields[0] in labels:
            raise ParseError(f"duplicate label {fields[0]!r}", lineno)
        labels.append(fields[0])
        amps.append(amp)
    if not labels:
        raise ParseError("profile file has no entries")
    total = math.fsum(a * a for a in amps)
    if total == 0.0:
        raise ProfileError("all-zero spectral profile")
    if not normalize and abs(total - 1.0) > PROFILE_TOL:
        raise ProfileError(f"profile is not normalised (sum of squares {total:.12g}); pass --normalize to rescale")
    return SpectralProfile.custom(amps, labels=labels, normalize=True)


def load_profile(path, normalize=False):
    return parse_profile_text(Path(path).read_text(), normalize=normalize)


def format_profile(profile):
    return "".join(f"{lab} {amp:.12g}\n" for lab, amp in profile.items())


# --- schemas ---------------------------------------------------------------


def noon_schema(spatial=("S",)):
    return DofSchema([(SPATIAL, spatial), (POL, (H, V))])


def ghz_schema(n):
    return DofSchema([(SPATIAL, [f"S{i}" for i in range(1, n + 1)]), (POL, (H, V))])


def pdc_schema(profile):
    return DofSchema([(SPATIAL, ("S",)), (POL, (H, V)), (FREQ, profile.labels)])


def _require_polarization(schema):
    if not schema.has(POL) or not schema.has(SPATIAL):
        raise SchemaError(f"schema needs DOFs {SPATIAL!r} and {POL!r}, has {schema.names}")
    alpha = schema.alphabet(POL)
    if H not in alpha or V not in alpha:
        raise SchemaError(f"polarization alphabet must contain {H} and {V}, has {alpha}")


def _mode(schema, **fixed):
    """Mode from the given labels; unspecified DOFs take their first label."""
    labels = [fixed.get(n, alpha[0]) for n, alpha in schema.dofs]
    return schema.mode(*labels)


def _finish(state, normalize):
    return _normalize(state)[0] if normalize else state


# --- builders --------------------------------------------------------------


def build_noon(n, schema=None, normalize=True):
    """``(a^dag(H,S)^N + a^dag(V,S)^N)|vac> / sqrt(2 N!)``."""
    if n < 1:
        raise ValueError("NOON state needs N >= 1")
    schema = schema or noon_schema()
    _require_polarization(schema)
    scale = 1.0 / math.sqrt(2.0 * math.factorial(n))
    terms = [
        (scale, CreationMonomial(schema, {_mode(schema, **{POL: pol}): n}))
        for pol in (H, V)
    ]
    return _finish(apply_polynomial(terms, vacuum(schema)), normalize)


def build_ghz(n, schema=None, normalize=True):
    """``(prod_i a^dag(H,S_i) + prod_i a^dag(V,S_i))|vac> / sqrt(2)`` over the first N spatial labels."""
    if n < 1:
        raise ValueError("GHZ state needs N >= 1")
    schema = schema or ghz_schema(n)
    _require_polarization(schema)
    arms = schema.alphabet(SPATIAL)
    if len(arms) < n:
        raise SchemaError(f"GHZ({n}) needs {n} spatial labels, schema has {len(arms)}")
    terms = [
        (1.0 / math.sqrt(2.0), CreationMonomial(
            schema, FockKet.from_photons(_mode(schema, **{SPATIAL: arm, POL: pol}) for arm in arms[:n])
        ))
        for pol in (H, V)
    ]
    return _finish(apply_polynomial(terms, vacuum(schema)), normalize)


def _pair_operator(profile, schema):
    """Terms of ``sum_a phi(a) [a^dag(H,a)^2 + a^dag(V,a)^2]``."""
    return [
        (phi, CreationMonomial(schema, {_mode(schema, **{POL: pol, FREQ: lab}): 2}))
        for lab, phi in profile.items()
        for pol in (H, V)
        if phi != 0.0
    ]


def build_pdc_two_photon(profile, normalize=True):
    """``(1/sqrt 2) sum_a phi(a)[a^dag(H,a)^2 + a^dag(V,a)^2]|vac>``; raw norm is sqrt(2)."""
    profile = make_profile(profile)
    schema = pdc_schema(profile)
    terms = [(c / math.sqrt(2.0), m) for c, m in _pair_operator(profile, schema)]
    return _finish(apply_polynomial(terms, vacuum(schema)), normalize)


def build_pdc_four_photon(profile, normalize=True):
    """``(1/2) (sum_a phi(a)[a^dag(H,a)^2 + a^dag(V,a)^2])^2 |vac>``.

    The raw state (``normalize=False``) has norm squared ``8 (1 + K)``.
    """
    profile = make_profile(profile)
    schema = pdc_schema(profile)
    op = _pair_operator(profile, schema)
    once = apply_polynomial(op, vacuum(schema))
    twice = apply_polynomial([(0.5 * c, m) for c, m in op], once)
    return _finish(twice, normalize)


def build_four_photon_parts(profile):
    """Raw (A, B) with ``(A + B) / 2`` equal to the raw four-photon state.

    A holds the polarization-symmetric monomials: ``H^2 H^2`` and ``V^2 V^2``
    at any pair of frequencies plus ``H^2 V^2`` at a shared frequency. B holds
    ``H^2(a) V^2(b)`` with ``a != b``, the part lacking its
    ``H(a) V(a) H(b) V(b)`` partner.
    """
    profile = make_profile(profile)
    schema = pdc_schema(profile)

    def sq(pol, lab):
        return _mode(schema, **{POL: pol, FREQ: lab})

    def mono(*pairs):
        return CreationMonomial(schema, list(pairs))

    a_terms, b_terms = [], []
    for la, pa in profile.items():
        for lb, pb in profile.items():
            c = pa * pb
            if c == 0.0:
                continue
            if la == lb:
                a_terms += [
                    (c, mono((sq(H, la), 4))),
                    (c, mono((sq(V, la), 4))),
                    (2.0 * c, mono((sq(H, la), 2), (sq(V, la), 2))),
                ]
            else:
                a_terms += [
                    (c, mono((sq(H, la), 2), (sq(H, lb), 2))),
                    (c, mono((sq(V, la), 2), (sq(V, lb), 2))),
                ]
                b_terms += [
                    (c, mono((sq(H, la), 2), (sq(V, lb), 2))),
                    (c, mono((sq(V, la), 2), (sq(H, lb), 2))),
                ]
    vac = vacuum(schema)
    part_a = apply_polynomial(a_terms, vac)
    part_b = apply_polynomial(b_terms, vac) if b_terms else StateVector(schema, 4, {})
    return part_a, part_b


def build_singlet(schema=None, freqs=("a", "b"), normalize=True):
    """Two photons antisymmetric in both polarization and frequency.

    ``(a^dag(H,a) a^dag(V,b) - a^dag(H,b) a^dag(V,a))|vac> / sqrt(2)``.
    """
    schema = schema or DofSchema([(SPATIAL, ("S",)), (POL, (H, V)), (FREQ, freqs)])
    _require_polarization(schema)
    fa, fb = schema.alphabet(FREQ)[:2]

    def m(pol, f):
        return _mode(schema, **{POL: pol, FREQ: f})

    terms = [
        (1 / math.sqrt(2), CreationMonomial(schema, [(m(H, fa), 1), (m(V, fb), 1)])),
        (-1 / math.sqrt(2), CreationMonomial(schema, [(m(H, fb), 1), (m(V, fa), 1)])),
    ]
    return _finish(apply_polynomial(terms, vacuum(schema)), normalize)


def build_polarization_fock(n_h, n_v, schema=None):
    """Unit-norm ket with ``n_h`` H and ``n_v`` V photons in one spatial mode."""
    schema = schema or noon_schema()
    _require_polarization(schema)
    counts = {_mode(schema, **{POL: H}): n_h, _mode(schema, **{POL: V}): n_v}
    return StateVector(schema, n_h + n_v, {FockKet(counts): 1.0})


def build_state(name, n=None, profile=None):
    """Named builder used by the CLI: noon, ghz, pdc2, pdc4."""
    if name == "noon":
        return build_noon(_need(n, name))
    if name == "ghz":
        return build_ghz(_need(n, name))
    if name == "pdc2":
        return build_pdc_two_photon(profile or "point")
    if name == "pdc4":
        return build_pdc_four_photon(profile or "point")
    raise ValueError(f"unknown state {name!r}")


def _need(n, name):
    if n is None:
        raise ValueError(f"state {name!r} needs a photon number")
    return n


__all__: Sequence[str] = [
    "SPATIAL", "POL", "FREQ", "H", "V",
    "KValue", "SpectralProfile", "compute_K", "make_profile",
    "parse_profile_text", "load_profile", "format_profile",
    "noon_schema", "ghz_schema", "pdc_schema",
    "build_noon", "build_ghz", "build_pdc_two_photon", "build_pdc_four_photon",
    "build_four_photon_parts", "build_singlet", "build_polarization_fock", "build_state",
]
