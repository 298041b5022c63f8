"""Sparse multiphoton states over modes carrying several degrees of freedom.

A mode is one label per DOF. Internally it is stored as a tuple of label
indices (``Mode``), so the natural tuple ordering is the canonical order:
lexicographic by DOF position, then by label index within that DOF.

Second-quantized states (:class:`StateVector`) map occupation kets to
amplitudes with the convention ``a^dag^n |vac> = sqrt(n!) |n>``. The
first-quantized form (:class:`FirstQuantizedTensor`) stores the coefficient
``f`` over ordered N-tuples of modes; a ket with occupations ``{n_m}`` and
amplitude ``c`` spreads over its distinct orderings with
``f = c * sqrt(prod(n_m!) / N!)``.
"""

import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapacityError, SchemaError, SymmetryError, ZeroStateError

PRUNE_TOL = 1e-14
MAX_PHOTONS = 6
MAX_MODES = 16
SYMMETRY_TOL = 1e-10

Mode = tuple  # tuple[int, ...], one label index per DOF


@dataclass(frozen=True)
class DofSchema:
    """Ordered DOFs, each with an ordered alphabet of string labels.

    >>> s = DofSchema([("spatial", ["S"]), ("pol", ["H", "V"])])
    >>> s.mode("S", "V")
    (0, 1)
    """

    dofs: tuple

    def __init__(self, dofs):
        items = dofs.items() if isinstance(dofs, Mapping) else dofs
        norm = tuple((str(name), tuple(str(x) for x in labels)) for name, labels in items)
        names = [n for n, _ in norm]
        if not norm:
            raise SchemaError("schema needs at least one DOF")
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate DOF names in {names}")
        for name, labels in norm:
            if not labels:
                raise SchemaError(f"DOF {name!r} has an empty alphabet")
            if len(set(labels)) != len(labels):
                raise SchemaError(f"DOF {name!r} has repeated labels")
        object.__setattr__(self, "dofs", norm)
        object.__setattr__(self, "_index", {
            name: {lab: i for i, lab in enumerate(labels)} for name, labels in norm
        })

    @property
    def names(self):
        return tuple(n for n, _ in self.dofs)

    @property
    def n_modes(self):
        return math.prod(len(labels) for _, labels in self.dofs)

    def position(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise SchemaError(f"schema has no DOF named {name!r}") from None

    def alphabet(self, name):
        return self.dofs[self.position(name)][1]

    def has(self, name):
        return name in self._index

    def label_index(self, name, label):
        try:
            return self._index[name][label]
        except KeyError:
            raise SchemaError(f"label {label!r} not in alphabet of DOF {name!r}") from None

    def mode(self, *labels, **named):
        """Build a mode from labels given positionally (schema order) or by DOF name."""
        if named:
            if labels:
                raise TypeError("give labels positionally or by name, not both")
            missing = set(self.names) - set(named)
            extra = set(named) - set(self.names)
            if missing or extra:
                raise SchemaError(f"mode labels must cover exactly {self.names}")
            labels = tuple(named[n] for n in self.names)
        if len(labels) != len(self.dofs):
            raise SchemaError(f"expected {len(self.dofs)} labels, got {len(labels)}")
        return tuple(self.label_index(n, lab) for n, lab in zip(self.names, labels))

    def labels(self, mode):
        self.check_mode(mode)
        return tuple(alpha[i] for (_, alpha), i in zip(self.dofs, mode))

    def check_mode(self, mode):
        if len(mode) != len(self.dofs):
            raise SchemaError(f"mode {mode!r} has wrong arity for schema {self.names}")
        for (name, alpha), i in zip(self.dofs, mode):
            if not (isinstance(i, int) and 0 <= i < len(alpha)):
                raise SchemaError(f"mode {mode!r}: index {i!r} invalid for DOF {name!r}")

    def replace_alphabet(self, name, labels):
        pos = self.position(name)
        dofs = list(self.dofs)
        dofs[pos] = (name, tuple(labels))
        return DofSchema(dofs)

    def all_modes(self):
        return [tuple(idx) for idx in _product_ranges([len(a) for _, a in self.dofs])]

    def __str__(self):
        return "; ".join(f"{n}: {' '.join(a)}" for n, a in self.dofs)


def _product_ranges(sizes):
    if not sizes:
        yield ()
        return
    for head in range(sizes[0]):
        for tail in _product_ranges(sizes[1:]):
            yield (head,) + tail


class FockKet(tuple):
    """Occupation-number basis ket: sorted ``((mode, count), ...)`` with counts > 0."""

    __slots__ = ()

    def __new__(cls, counts=()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        merged = {}
        for mode, n in items:
            n = int(n)
            if n < 0:
                raise ValueError("occupation counts must be non-negative")
            if n:
                mode = tuple(mode)
                merged[mode] = merged.get(mode, 0) + n
        return super().__new__(cls, tuple(sorted(merged.items())))

    @classmethod
    def from_photons(cls, modes):
        """Ket from a sequence of (possibly repeated) modes, one entry per photon."""
        counts = {}
        for m in modes:
            m = tuple(m)
            counts[m] = counts.get(m, 0) + 1
        return cls(counts)

    @property
    def total(self):
        return sum(n for _, n in self)

    @property
    def counts(self):
        return dict(self)

    def occupation(self, mode):
        for m, n in self:
            if m == mode:
                return n
        return 0

    def photons(self):
        """Modes with repetition, in canonical order."""
        return tuple(m for m, n in self for _ in range(n))

    def factorial_product(self):
        return math.prod(math.factorial(n) for _, n in self)

    def __repr__(self):
        return f"FockKet({dict(self)!r})"


@dataclass(frozen=True)
class CreationMonomial:
    """Product of creation operators ``prod_m a^dag(m)^k_m`` over one schema."""

    schema: DofSchema
    factors: FockKet

    def __init__(self, schema, factors):
        factors = factors if isinstance(factors, FockKet) else FockKet(factors)
        for mode, _ in factors:
            schema.check_mode(mode)
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_labels(cls, schema, factors):
        """``factors`` maps label tuples to exponents."""
        return cls(schema, {schema.mode(*labels): k for labels, k in factors.items()})

    @property
    def degree(self):
        return self.factors.total

    def __mul__(self, other):
        if not isinstance(other, CreationMonomial):
            return NotImplemented
        if other.schema != self.schema:
            raise SchemaError("cannot multiply monomials over different schemas")
        return CreationMonomial(self.schema, list(self.factors) + list(other.factors))


class StateVector:
    """Immutable sparse superposition of occupation kets with fixed photon number."""

    __slots__ = ("schema", "photon_number", "_terms")

    def __init__(self, schema, photon_number, terms, *, prune=PRUNE_TOL):
        collected = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for ket, amp in items:
            if not isinstance(ket, FockKet):
                ket = FockKet(ket)
            if ket.total != photon_number:
                raise SchemaError(f"ket {ket!r} has {ket.total} photons, expected {photon_number}")
            for mode, _ in ket:
                schema.check_mode(mode)
            collected[ket] = collected.get(ket, 0j) + complex(amp)
        kept = {k: collected[k] for k in sorted(collected) if abs(collected[k]) >= prune}
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "photon_number", int(photon_number))
        object.__setattr__(self, "_terms", MappingProxyType(kept))

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def terms(self):
        return self._terms

    def items(self):
        return self._terms.items()

    def amplitude(self, ket):
        if not isinstance(ket, FockKet):
            ket = FockKet(ket)
        return self._terms.get(ket, 0j)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[FockKet]:
        return iter(self._terms)

    def norm_squared(self):
        return sum(abs(a) ** 2 for a in self._terms.values())

    def norm(self):
        return math.sqrt(self.norm_squared())

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other, 1, -1)

    def __mul__(self, c):
        return scale(self, c)

    __rmul__ = __mul__

    def __neg__(self):
        return scale(self, -1)

    def allclose(self, other, atol=1e-12):
        """Max amplitude difference below ``atol`` (same schema and photon number)."""
        if other.schema != self.schema or other.photon_number != self.photon_number:
            return False
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.amplitude(k) - other.amplitude(k)) <= atol for k in keys)

    def max_abs_diff(self, other):
        keys = set(self._terms) | set(other._terms)
        return max((abs(self.amplitude(k) - other.amplitude(k)) for k in keys), default=0.0)

    def describe(self):
        """Readable ``amplitude * |labels^count ...>`` lines."""
        lines = []
        for ket, amp in self.items():
            occ = " ".join(
                f"{','.join(self.schema.labels(m))}^{n}" if n > 1 else ",".join(self.schema.labels(m))
                for m, n in ket
            )
            lines.append(f"{amp.real:+.6f}{amp.imag:+.6f}j |{occ}>")
        return "\n".join(lines)

    def __repr__(self):
        return f"<StateVector N={self.photon_number} kets={len(self)} schema=({self.schema})>"


def vacuum(schema):
    return StateVector(schema, 0, {FockKet(): 1.0})


def _ladder_factor(n, k):
    # sqrt((n+k)!/n!) with exact integer product before the root
    return math.sqrt(math.prod(range(n + 1, n + k + 1)))


def apply_creation_monomial(m, s):
    """Apply ``prod a^dag(mode)^k`` to ``s`` with bosonic ladder factors."""
    if m.schema != s.schema:
        raise SchemaError("monomial and state are defined over different schemas")
    out = {}
    for ket, amp in s.items():
        counts = dict(ket)
        factor = 1.0
        for mode, k in m.factors:
            n = counts.get(mode, 0)
            factor *= _ladder_factor(n, k)
            counts[mode] = n + k
        new = FockKet(counts)
        out[new] = out.get(new, 0j) + amp * factor
    return StateVector(s.schema, s.photon_number + m.degree, out)


def apply_polynomial(terms, s):
    """Apply ``sum_j c_j M_j`` (pairs of coefficient and monomial) to ``s``.

    All monomials must share one degree so the result has a definite photon number.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("empty polynomial")
    degrees = {m.degree for _, m in terms}
    if len(degrees) != 1:
        raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degrees)}")
    acc = {}
    for c, m in terms:
        for ket, amp in apply_creation_monomial(m, s).items():
            acc[ket] = acc.get(ket, 0j) + c * amp
    return StateVector(s.schema, s.photon_number + degrees.pop(), acc)


def _check_compatible(s1, s2):
    if s1.schema != s2.schema:
        raise SchemaError("states are defined over different schemas")


def inner_product(s1, s2):
    """``<s1|s2>``; zero when photon numbers differ."""
    _check_compatible(s1, s2)
    if s1.photon_number != s2.photon_number:
        return 0j
    small, large = (s1, s2) if len(s1) <= len(s2) else (s2, s1)
    total = 0j
    for ket, a in small.items():
        b = large.terms.get(ket)
        if b is not None:
            total += (a.conjugate() * b) if small is s1 else (b.conjugate() * a)
    return total


def add(s1, s2, c1=1.0, c2=1.0):
    _check_compatible(s1, s2)
    if s1.photon_number != s2.photon_number:
        raise SchemaError("cannot add states with different photon numbers")
    acc = {k: c1 * a for k, a in s1.items()}
    for k, a in s2.items():
        acc[k] = acc.get(k, 0j) + c2 * a
    return StateVector(s1.schema, s1.photon_number, acc)


def scale(s, c):
    return StateVector(s.schema, s.photon_number, {k: c * a for k, a in s.items()})


def normalize(s):
    """Return ``(unit-norm state, original norm)``."""
    n = s.norm()
    if n == 0.0:
        raise ZeroStateError("cannot normalize the zero state")
    return scale(s, 1.0 / n), n


def multiset_permutations(items: Sequence) -> Iterator[tuple]:
    """Distinct orderings of ``items`` in lexicographic order."""
    seq = sorted(items)
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and not seq[i] < seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while not seq[i] < seq[j]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1:] = reversed(seq[i + 1:])


def n_orderings(ket):
    return math.factorial(ket.total) // ket.factorial_product()


class FirstQuantizedTensor:
    """Coefficient function over ordered N-tuples of modes (sparse)."""

    __slots__ = ("schema", "photon_number", "_entries")

    def __init__(self, schema, photon_number, entries, *, prune=PRUNE_TOL):
        clean = {}
        for key, value in (entries.items() if isinstance(entries, Mapping) else entries):
            key = tuple(tuple(m) for m in key)
            if len(key) != photon_number:
                raise SchemaError(f"tuple {key!r} does not have {photon_number} slots")
            for mode in key:
                schema.check_mode(mode)
            clean[key] = clean.get(key, 0j) + complex(value)
        kept = {k: clean[k] for k in sorted(clean) if abs(clean[k]) >= prune}
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "photon_number", int(photon_number))
        object.__setattr__(self, "_entries", MappingProxyType(kept))

    def __setattr__(self, name, value):
        raise AttributeError("FirstQuantizedTensor is immutable")

    @property
    def entries(self):
        return self._entries

    def items(self):
        return self._entries.items()

    def get(self, key):
        return self._entries.get(key, 0j)

    def __len__(self):
        return len(self._entries)

    def norm_squared(self):
        return sum(abs(v) ** 2 for v in self._entries.values())

    def norm(self):
        return math.sqrt(self.norm_squared())

    def subtract(self, other):
        acc = dict(self._entries)
        for k, v in other.items():
            acc[k] = acc.get(k, 0j) - v
        return FirstQuantizedTensor(self.schema, self.photon_number, acc)

    def inner(self, other):
        return sum(v.conjugate() * other.get(k) for k, v in self.items())

    def __repr__(self):
        return f"<FirstQuantizedTensor N={self.photon_number} entries={len(self)}>"


def slot_symmetry_violation(t: FirstQuantizedTensor):
    """Worst ``|f(x) - f(x with slots i,i+1 swapped)|`` over stored tuples.

    Returns ``(violation, (tuple, swapped))``; the pair is None for an empty tensor.
    """
    worst, pair = 0.0, None
    for key, value in t.items():
        for i in range(len(key) - 1):
            if key[i] == key[i + 1]:
                continue
            swapped = key[:i] + (key[i + 1], key[i]) + key[i + 2:]
            d = abs(value - t.get(swapped))
            if pair is None or d > worst:
                worst, pair = d, (key, swapped)
    return worst, pair


def to_first_quantized(s, max_photons=MAX_PHOTONS, max_modes=MAX_MODES):
    if s.photon_number > max_photons:
        raise CapacityError(f"{s.photon_number} photons exceeds the first-quantized cap of {max_photons}")
    support = {m for ket in s for m, _ in ket}
    if len(support) > max_modes:
        warnings.warn(
            f"state occupies {len(support)} modes (soft cap {max_modes}); "
            "first-quantized expansion may be large",
            RuntimeWarning,
            stacklevel=2,
        )
    entries = {}
    for ket, amp in s.items():
        f = amp / math.sqrt(n_orderings(ket))
        for order in multiset_permutations(ket.photons()):
            entries[order] = f
    return FirstQuantizedTensor(s.schema, s.photon_number, entries)


def from_first_quantized(t, tol=SYMMETRY_TOL):
    violation, pair = slot_symmetry_violation(t)
    if violation >= tol:
        raise SymmetryError(
            f"tensor is not permutation symmetric: violation {violation:.3e} between {pair}",
            pair=pair,
            violation=violation,
        )
    sums = {}
    for key, value in t.items():
        ket = FockKet.from_photons(key)
        sums[ket] = sums.get(ket, 0j) + value
    terms = {ket: total / math.sqrt(n_orderings(ket)) for ket, total in sums.items()}
    return StateVector(t.schema, t.photon_number, terms)


def monomial(schema, *labelled: Iterable) -> CreationMonomial:
    """Shorthand: ``monomial(schema, ("S", "H"), ("S", "H"))`` is ``a^dag(S,H)^2``."""
    return CreationMonomial(schema, FockKet.from_photons(schema.mode(*lab) for lab in labelled))
