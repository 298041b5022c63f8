"""Frequency-diagonal linear optics, threshold coincidences and the NOON projector.

Networks act on single-photon modes labelled by (arm, polarization); every
other DOF (frequency, ...) passes through untouched. The single-photon map
``T`` sends ``a^dag(arm, pol) -> sum T[out, in] a^dag(out)``, with the index
of (arm ``k``, pol ``p``) equal to ``2 k + p`` (``p = 0`` for H, 1 for V).

Multiphoton amplitudes come from permanents: photons sharing the same
passive labels form one block, and the amplitude of an output ket is the
product of block permanents over ``sqrt(prod n_in! prod n_out!)``.
"""

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Optional

import numpy as np

from . import _kernels
from .errors import CapacityError, NetworkError, ParseError, SchemaError
from .fock import MAX_PHOTONS, FockKet, StateVector
from .states import POL, SPATIAL, H, V

UNITARY_TOL = 1e-12


def _as_matrix(m, shape):
    arr = np.array(m, dtype=np.complex128)
    if arr.shape != shape:
        raise NetworkError(f"expected a {shape} matrix, got shape {arr.shape}")
    return arr


def _check_unitary(u, what):
    dev = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
    if dev > UNITARY_TOL:
        raise NetworkError(f"{what} is not unitary (deviation {dev:.2e})")


def _cplx(z):
    z = complex(z)
    return [z.real, z.imag]


def _from_cplx(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise NetworkError(f"complex numbers are [re, im] pairs, got {x!r}")
        return complex(float(x[0]), float(x[1]))
    return complex(float(x))


# --- elements --------------------------------------------------------------
#
# Each element embeds into the 2A x 2A single-photon space via ``embed``.


@dataclass(frozen=True)
class BeamSplitter:
    """Reflected amplitude ``i sqrt(r)``, transmitted ``sqrt(1 - r)``."""

    arm_a: str
    arm_b: str
    reflectivity: float
    kind = "beam_splitter"

    def __post_init__(self):
        if not 0.0 <= self.reflectivity <= 1.0:
            raise NetworkError(f"reflectivity {self.reflectivity} outside [0, 1]")
        if self.arm_a == self.arm_b:
            raise NetworkError("beam splitter needs two distinct arms")

    @property
    def arms(self):
        return (self.arm_a, self.arm_b)

    def block(self):
        t = math.sqrt(1.0 - self.reflectivity)
        r = 1j * math.sqrt(self.reflectivity)
        return np.array([[t, r], [r, t]], dtype=np.complex128)

    def embed(self, idx, size):
        return _embed_spatial(self.block(), [idx[a] for a in self.arms], size)

    def to_dict(self):
        return {"kind": self.kind, "arms": list(self.arms), "reflectivity": self.reflectivity}


@dataclass(frozen=True)
class Multiport:
    """Unitary over a set of arms, identical for both polarizations."""

    arms: tuple
    matrix: np.ndarray = field(compare=False)
    kind = "multiport"

    def __post_init__(self):
        arms = tuple(self.arms)
        if len(set(arms)) != len(arms):
            raise NetworkError("multiport arms must be distinct")
        u = _as_matrix(self.matrix, (len(arms), len(arms)))
        _check_unitary(u, "multiport matrix")
        u.setflags(write=False)
        object.__setattr__(self, "arms", arms)
        object.__setattr__(self, "matrix", u)

    def embed(self, idx, size):
        return _embed_spatial(self.matrix, [idx[a] for a in self.arms], size)

    def to_dict(self):
        return {
            "kind": self.kind,
            "arms": list(self.arms),
            "matrix": [[_cplx(z) for z in row] for row in self.matrix],
        }


@dataclass(frozen=True)
class PolarizationPhase:
    """``a^dag(V, arm) -> e^{i phase} a^dag(V, arm)`` on ``arms`` (all arms when None)."""

    phase: float
    arms: Optional[tuple] = None
    kind = "polarization_phase"

    def embed(self, idx, size):
        m = np.eye(size, dtype=np.complex128)
        for a in (self.arms if self.arms is not None else idx):
            k = idx[a]
            m[2 * k + 1, 2 * k + 1] = np.exp(1j * self.phase)
        return m

    def to_dict(self):
        d = {"kind": self.kind, "phase": self.phase}
        if self.arms is not None:
            d["arms"] = list(self.arms)
        return d


@dataclass(frozen=True)
class ArmDelay:
    """Phase delay on the V component of one arm."""

    arm: str
    phase: float
    kind = "arm_delay"

    def embed(self, idx, size):
        m = np.eye(size, dtype=np.complex128)
        k = idx[self.arm]
        m[2 * k + 1, 2 * k + 1] = np.exp(1j * self.phase)
        return m

    def to_dict(self):
        return {"kind": self.kind, "arm": self.arm, "phase": self.phase}


@dataclass(frozen=True)
class ArmPhase:
    """Common phase on both polarizations of one arm."""

    arm: str
    phase: float
    kind = "arm_phase"

    def embed(self, idx, size):
        m = np.eye(size, dtype=np.complex128)
        k = idx[self.arm]
        m[2 * k, 2 * k] = m[2 * k + 1, 2 * k + 1] = np.exp(1j * self.phase)
        return m

    def to_dict(self):
        return {"kind": self.kind, "arm": self.arm, "phase": self.phase}


@dataclass(frozen=True)
class WavePlate:
    """2x2 polarization unitary on one arm, in the (H, V) basis."""

    arm: str
    matrix: np.ndarray = field(compare=False)
    kind = "wave_plate"

    def __post_init__(self):
        u = _as_matrix(self.matrix, (2, 2))
        _check_unitary(u, "wave plate")
        u.setflags(write=False)
        object.__setattr__(self, "matrix", u)

    def embed(self, idx, size):
        return _embed_pol(self.matrix, idx[self.arm], size)

    def to_dict(self):
        return {"kind": self.kind, "arm": self.arm, "matrix": [[_cplx(z) for z in row] for row in self.matrix]}


@dataclass(frozen=True)
class Polarizer:
    """Rank-one projection ``|p><p|`` on one arm; the blocked component is lost."""

    arm: str
    axis: tuple
    kind = "polarizer"

    def __post_init__(self):
        p = np.array([complex(z) for z in self.axis], dtype=np.complex128)
        if p.shape != (2,):
            raise NetworkError("polarizer axis must be a 2-vector over (H, V)")
        n = np.linalg.norm(p)
        if abs(n - 1.0) > 1e-12:
            raise NetworkError(f"polarizer axis must be a unit vector (norm {n})")
        object.__setattr__(self, "axis", (complex(p[0]), complex(p[1])))

    def embed(self, idx, size):
        p = np.array(self.axis, dtype=np.complex128)
        return _embed_pol(np.outer(p, p.conj()), idx[self.arm], size)

    def to_dict(self):
        return {"kind": self.kind, "arm": self.arm, "axis": [_cplx(z) for z in self.axis]}


def _embed_spatial(block, arm_indices, size):
    m = np.eye(size, dtype=np.complex128)
    for p in (0, 1):
        rows = [2 * k + p for k in arm_indices]
        m[np.ix_(rows, rows)] = block
    return m


def _embed_pol(block, k, size):
    m = np.eye(size, dtype=np.complex128)
    m[2 * k:2 * k + 2, 2 * k:2 * k + 2] = block
    return m


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def retarder_matrix(retardance, angle=0.0):
    """Linear retarder with fast axis at ``angle``: ``R(angle) diag(1, e^{i retardance}) R(-angle)``."""
    r = rotation(angle)
    return r @ np.diag([1.0, np.exp(1j * retardance)]) @ r.T


def half_wave_plate(arm, angle):
    """Half-wave plate at ``angle``: ``[[cos 2a, sin 2a], [sin 2a, -cos 2a]]``."""
    c, s = math.cos(2 * angle), math.sin(2 * angle)
    return WavePlate(arm, np.array([[c, s], [s, -c]], dtype=np.complex128))


def quarter_wave_plate(arm, angle=0.0):
    """Quarter-wave plate; at 0 it is ``diag(1, i)``."""
    return WavePlate(arm, retarder_matrix(math.pi / 2, angle))


def linear_polarizer(arm, angle):
    return Polarizer(arm, (math.cos(angle), math.sin(angle)))


def projection_polarizer(arm, bra):
    """Polarizer whose transmitted amplitude is ``<bra|psi>`` for ``bra = (b_H, b_V)``."""
    b = np.array(bra, dtype=np.complex128)
    return Polarizer(arm, tuple(b.conj() / np.linalg.norm(b)))


_ELEMENTS = {cls.kind: cls for cls in (BeamSplitter, Multiport, PolarizationPhase, ArmDelay, ArmPhase, WavePlate, Polarizer)}


def element_from_dict(d):
    if not isinstance(d, dict) or "kind" not in d:
        raise NetworkError(f"element must be an object with a 'kind', got {d!r}")
    kind = d["kind"]
    try:
        if kind == "beam_splitter":
            a, b = d["arms"]
            return BeamSplitter(a, b, float(d["reflectivity"]))
        if kind == "multiport":
            return Multiport(tuple(d["arms"]), [[_from_cplx(z) for z in row] for row in d["matrix"]])
        if kind == "polarization_phase":
            arms = d.get("arms")
            return PolarizationPhase(float(d["phase"]), tuple(arms) if arms is not None else None)
        if kind == "arm_delay":
            return ArmDelay(d["arm"], float(d["phase"]))
        if kind == "arm_phase":
            return ArmPhase(d["arm"], float(d["phase"]))
        if kind == "wave_plate":
            return WavePlate(d["arm"], [[_from_cplx(z) for z in row] for row in d["matrix"]])
        if kind == "half_wave_plate":
            return half_wave_plate(d["arm"], float(d["angle"]))
        if kind == "quarter_wave_plate":
            return quarter_wave_plate(d["arm"], float(d.get("angle", 0.0)))
        if kind == "polarizer":
            if "angle" in d:
                return linear_polarizer(d["arm"], float(d["angle"]))
            return Polarizer(d["arm"], tuple(_from_cplx(z) for z in d["axis"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, NetworkError):
            raise
        raise NetworkError(f"bad {kind!r} element: {exc}") from exc
    raise NetworkError(f"unknown element kind {kind!r}")


def _element_arms(el):
    if isinstance(el, (BeamSplitter, Multiport)):
        return el.arms
    if isinstance(el, PolarizationPhase):
        return el.arms or ()
    return (el.arm,)


@dataclass(frozen=True)
class LinearNetwork:
    """Ordered optical elements over named arms (applied first to last)."""

    arms: tuple
    elements: tuple = ()

    def __post_init__(self):
        arms = tuple(str(a) for a in self.arms)
        if not arms or len(set(arms)) != len(arms):
            raise NetworkError("network arms must be non-empty and distinct")
        elements = tuple(self.elements)
        known = set(arms)
        for el in elements:
            if not isinstance(el, tuple(_ELEMENTS.values())):
                raise NetworkError(f"unsupported element {el!r}")
            missing = set(_element_arms(el)) - known
            if missing:
                raise NetworkError(f"element {el.kind} refers to unknown arms {sorted(missing)}")
        object.__setattr__(self, "arms", arms)
        object.__setattr__(self, "elements", elements)

    @property
    def size(self):
        return 2 * len(self.arms)

    def prepend(self, *elements):
        return LinearNetwork(self.arms, tuple(elements) + self.elements)

    def append(self, *elements):
        return LinearNetwork(self.arms, self.elements + tuple(elements))

    def to_dict(self):
        return {"arms": list(self.arms), "elements": [el.to_dict() for el in self.elements]}


@dataclass(frozen=True)
class DetectorLayout:
    """Threshold detectors, each watching a set of arms (blind to polarization and frequency)."""

    detectors: tuple

    def __post_init__(self):
        dets = tuple(frozenset(str(a) for a in d) for d in self.detectors)
        if any(not d for d in dets):
            raise NetworkError("every detector must cover at least one arm")
        object.__setattr__(self, "detectors", dets)

    @classmethod
    def per_arm(cls, arms):
        return cls(tuple(frozenset([a]) for a in arms))

    def validate(self, net):
        for d in self.detectors:
            missing = d - set(net.arms)
            if missing:
                raise NetworkError(f"detector watches arms {sorted(missing)} not in the network")

    def to_list(self):
        return [sorted(d) for d in self.detectors]


def single_photon_map(net: LinearNetwork):
    """Composed single-photon transfer matrix over (arm, pol), index ``2 arm + pol``."""
    idx = {a: i for i, a in enumerate(net.arms)}
    t = np.eye(net.size, dtype=np.complex128)
    for el in net.elements:
        m = el.embed(idx, net.size)
        if m.shape != t.shape:
            raise NetworkError(f"element {el.kind} has the wrong dimension")
        t = m @ t
    return t


# --- propagation -----------------------------------------------------------


@lru_cache(maxsize=None)
def _combos(n_modes, k):
    rows = np.array(list(combinations_with_replacement(range(n_modes), k)), dtype=np.int64).reshape(-1, k)
    fact = np.ones(len(rows))
    for i, row in enumerate(rows):
        _, counts = np.unique(row, return_counts=True)
        fact[i] = math.prod(math.factorial(int(c)) for c in counts)
    rows.setflags(write=False)
    fact.setflags(write=False)
    return rows, fact


class _Layout:
    """Bookkeeping that maps input-schema modes onto (block, local index)."""

    def __init__(self, net, schema):
        if not (schema.has(SPATIAL) and schema.has(POL)):
            raise SchemaError(f"network input needs DOFs {SPATIAL!r} and {POL!r}")
        if tuple(schema.alphabet(POL)) != (H, V):
            raise SchemaError(f"polarization alphabet must be exactly ({H}, {V})")
        self.sp = schema.position(SPATIAL)
        self.pp = schema.position(POL)
        arm_idx = {a: i for i, a in enumerate(net.arms)}
        missing = [lab for lab in schema.alphabet(SPATIAL) if lab not in arm_idx]
        if missing:
            raise NetworkError(f"state spatial labels {missing} are not network arms {net.arms}")
        self.arm_of = [arm_idx[lab] for lab in schema.alphabet(SPATIAL)]
        self.passive = [i for i in range(len(schema.names)) if i not in (self.sp, self.pp)]
        self.out_schema = schema.replace_alphabet(SPATIAL, net.arms)
        self.size = net.size
        self.ndofs = len(schema.names)

    def split(self, mode):
        local = 2 * self.arm_of[mode[self.sp]] + mode[self.pp]
        return tuple(mode[i] for i in self.passive), local

    def out_mode(self, passive, local):
        m = [0] * self.ndofs
        m[self.sp], m[self.pp] = divmod(local, 2)
        for i, v in zip(self.passive, passive):
            m[i] = v
        return tuple(m)


def _propagate(net, s, detector_table=None):
    """Output (rows, amplitudes, block keys) with rows of global output ids.

    A global id is ``block * size + local`` where ``block`` indexes the
    passive-label combinations met in the input. ``detector_table`` (arms x
    detectors booleans) keeps only rows in which every detector fires.
    """
    if s.photon_number > MAX_PHOTONS:
        raise CapacityError(f"{s.photon_number} photons exceeds the simulation cap of {MAX_PHOTONS}")
    lay = _Layout(net, s.schema)
    t = single_photon_map(net)
    size = lay.size
    blocks = {}
    all_rows, all_amps = [], []
    for ket, amp in s.items():
        groups = {}
        for mode, n in ket:
            passive, local = lay.split(mode)
            groups.setdefault(passive, []).extend([local] * n)
        in_norm = math.sqrt(ket.factorial_product())
        rows = np.zeros((1, 0), dtype=np.int64)
        factors = np.ones((1, 0), dtype=np.complex128)
        for passive in sorted(groups):
            cols = np.array(groups[passive], dtype=np.int64)
            block = blocks.setdefault(passive, len(blocks))
            combos, fact = _combos(size, len(cols))
            mats = t[combos[:, :, None], cols[None, None, :]]
            perms = _kernels.batch_permanents(mats) / np.sqrt(fact)
            keep = np.abs(perms) > 0.0
            g_rows = combos[keep] + block * size
            g_amps = perms[keep]
            rows = np.concatenate(
                [np.repeat(rows, len(g_rows), axis=0), np.tile(g_rows, (len(rows), 1))], axis=1
            )
            factors = np.concatenate(
                [np.repeat(factors, len(g_amps), axis=0), np.tile(g_amps[:, None], (len(factors), 1))], axis=1
            )
        # multiply block factors in value order so relabeling passive DOFs
        # (which permutes the blocks) cannot change the rounding
        factors = np.sort(factors, axis=1)
        amps = np.full(len(factors), amp / in_norm, dtype=np.complex128)
        for k in range(factors.shape[1]):
            amps = amps * factors[:, k]
        if detector_table is not None and len(rows):
            arms = (rows % size) // 2
            fired = detector_table[arms].any(axis=1).all(axis=1)
            rows, amps = rows[fired], amps[fired]
        all_rows.append(rows)
        all_amps.append(amps)
    n = s.photon_number
    if not all_rows:
        return np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.complex128), lay, blocks
    rows = np.concatenate(all_rows, axis=0)
    amps = np.concatenate(all_amps)
    if len(rows) == 0:
        return rows.reshape(0, n), amps, lay, blocks
    rows = np.sort(rows, axis=1)
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    # canonical summation order within each output ket, independent of input ket order
    order = np.lexsort((amps.imag, amps.real, inverse))
    inverse, amps = inverse[order], amps[order]
    summed = np.bincount(inverse, weights=amps.real, minlength=len(uniq)) + 1j * np.bincount(
        inverse, weights=amps.imag, minlength=len(uniq)
    )
    return uniq, summed, lay, blocks


def apply_network(net: LinearNetwork, s: StateVector):
    """Propagate ``s`` through ``net``; polarizers make the result sub-normalised."""
    rows, amps, lay, blocks = _propagate(net, s)
    passive_of = {b: p for p, b in blocks.items()}
    terms = {}
    for row, amp in zip(rows, amps):
        modes = [lay.out_mode(passive_of[int(g) // lay.size], int(g) % lay.size) for g in row]
        terms[FockKet.from_photons(modes)] = complex(amp)
    if s.photon_number == 0:
        terms = {FockKet(): a for _, a in s.items()}
    return StateVector(lay.out_schema, s.photon_number, terms)


def _detector_table(net, layout):
    layout.validate(net)
    idx = {a: i for i, a in enumerate(net.arms)}
    table = np.zeros((len(net.arms), len(layout.detectors)), dtype=bool)
    for j, d in enumerate(layout.detectors):
        for a in d:
            table[idx[a], j] = True
    return table


def coincidence_probability(s: StateVector, net: LinearNetwork, layout: DetectorLayout):
    """Probability that every detector fires, up to the overall efficiency constant."""
    if len(layout.detectors) != s.photon_number:
        raise NetworkError(
            f"{len(layout.detectors)} detectors for a {s.photon_number}-photon state; need one per photon"
        )
    table = _detector_table(net, layout)
    _, amps, _, _ = _propagate(net, s, detector_table=table)
    return float(np.sum(np.abs(amps) ** 2))


def outcome_probabilities(s: StateVector, net: LinearNetwork, layout: DetectorLayout):
    """Per-ket probabilities of the coincidence outcomes (sorted by ket)."""
    table = _detector_table(net, layout)
    rows, amps, lay, blocks = _propagate(net, s, detector_table=table)
    passive_of = {b: p for p, b in blocks.items()}
    out = {}
    for row, amp in zip(rows, amps):
        modes = [lay.out_mode(passive_of[int(g) // lay.size], int(g) % lay.size) for g in row]
        out[FockKet.from_photons(modes)] = float(abs(amp) ** 2)
    return dict(sorted(out.items()))


# --- NOON projection -------------------------------------------------------


def noon_delays(n, literal=False):
    """Per-arm V delays ``2 k pi / N`` (k = 1..N).

    With ``literal=False`` odd N get an extra ``pi / N`` on every arm so the
    product of the arm phases is -1 for all N; the detector then projects
    onto ``|H>^N - e^{-iN phi}|V>^N`` rather than the ``+`` combination.
    """
    offset = math.pi / n if (n % 2 and not literal) else 0.0
    return tuple(2 * k * math.pi / n + offset for k in range(1, n + 1))


def _detection(arm, delta, detection):
    if detection == "delay":
        return [ArmDelay(arm, delta), linear_polarizer(arm, math.pi / 4)]
    if detection == "projection":
        return [projection_polarizer(arm, (1.0, np.exp(-1j * delta)))]
    if detection == "waveplate":
        quarter_turns = delta / (math.pi / 2)
        k = round(quarter_turns)
        if abs(quarter_turns - k) < 1e-12:
            plates = [quarter_wave_plate(arm, 0.0) for _ in range(k % 4)]
        else:
            plates = [WavePlate(arm, retarder_matrix(delta, 0.0))]
        return plates + [half_wave_plate(arm, math.pi / 8), linear_polarizer(arm, 0.0)]
    raise NetworkError(f"unknown detection scheme {detection!r}")


def build_noon_projection_network(n, detection="delay", delays=None, input_arm="S"):
    """One input arm split N ways, then per-arm delay, 45 degree polarizer and detector.

    The splitter chain taps ``1/N, 1/(N-1), ..., 1/2`` of the remaining light
    into the vacuum arms ``v1 .. v(N-1)`` so every arm carries amplitude
    ``1/sqrt(N)``. ``detection`` selects the per-arm analyser: ``delay``
    (V delay + 45 degree polarizer), ``projection`` (direct projection onto
    ``<H| + e^{-i delta}<V|``) or ``waveplate`` (retarder, half-wave plate at
    22.5 degrees, H polarizer).
    """
    if n < 2:
        raise NetworkError("NOON projection needs N >= 2")
    vac = [f"v{k}" for k in range(1, n)]
    arms = (input_arm, *vac)
    elements = [BeamSplitter(input_arm, v, 1.0 / (n - j)) for j, v in enumerate(vac)]
    deltas = noon_delays(n) if delays is None else tuple(delays)
    if len(deltas) != n:
        raise NetworkError(f"need {n} delays, got {len(deltas)}")
    detect_order = (*vac, input_arm)
    for arm, delta in zip(detect_order, deltas):
        elements += _detection(arm, delta, detection)
    return LinearNetwork(arms, tuple(elements)), DetectorLayout.per_arm(detect_order)


def build_ghz_projection_network(n, detection="delay", delays=None, arms=None):
    """Per-arm delay, 45 degree polarizer and one detector on each of the N spatial arms."""
    if n < 2:
        raise NetworkError("GHZ projection needs N >= 2")
    arms = tuple(arms) if arms is not None else tuple(f"S{i}" for i in range(1, n + 1))
    if len(arms) != n:
        raise NetworkError(f"need {n} arms, got {len(arms)}")
    deltas = noon_delays(n) if delays is None else tuple(delays)
    if len(deltas) != n:
        raise NetworkError(f"need {n} delays, got {len(deltas)}")
    elements = []
    for arm, delta in zip(arms, deltas):
        elements += _detection(arm, delta, detection)
    return LinearNetwork(arms, tuple(elements)), DetectorLayout.per_arm(arms)


def noon_operator_expectation(s: StateVector, n, phi):
    """``<s|M|s>`` with ``M = (|H>^N - e^{-iN phi}|V>^N)(<H|^N - e^{iN phi}<V|^N) (x) I``.

    ``I`` is the identity on every non-polarization DOF. Only kets with all
    photons H or all V contribute; they pair up by their non-polarization
    configuration.
    """
    if s.photon_number != n:
        raise SchemaError(f"state has {s.photon_number} photons, operator needs {n}")
    pp = s.schema.position(POL)
    h_idx = s.schema.label_index(POL, H)
    v_idx = s.schema.label_index(POL, V)
    comps = {}
    for ket, amp in s.items():
        pols = {m[pp] for m, _ in ket}
        if len(pols) != 1:
            continue
        pol = pols.pop()
        if pol not in (h_idx, v_idx):
            continue
        rest = tuple((m[:pp] + m[pp + 1:], c) for m, c in ket)
        slot = comps.setdefault(rest, [0j, 0j])
        slot[0 if pol == h_idx else 1] += amp
    phase = np.exp(1j * n * phi)
    return float(sum(abs(a_h - phase * a_v) ** 2 for a_h, a_v in comps.values()))


# --- network documents -----------------------------------------------------


def network_to_dict(net, layout):
    return {**net.to_dict(), "detectors": layout.to_list()}


def network_from_dict(doc):
    if not isinstance(doc, dict):
        raise NetworkError("network document must be a JSON object")
    try:
        arms = doc["arms"]
        elements = doc.get("elements", [])
        detectors = doc["detectors"]
    except KeyError as exc:
        raise NetworkError(f"network document lacks {exc.args[0]!r}") from None
    net = LinearNetwork(tuple(arms), tuple(element_from_dict(e) for e in elements))
    layout = DetectorLayout(tuple(detectors))
    layout.validate(net)
    return net, layout


def load_network(path):
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    return network_from_dict(doc)
