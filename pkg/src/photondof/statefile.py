"""Plain-text state documents.

::

    photon_number 2
    dof spatial S
    dof pol H V
    ket S,H:2 | 0.707106781187 0
    ket S,V:2 | 0.707106781187 0

Modes are written as comma-joined labels in schema order, followed by
``:count``; pairs appear in canonical mode order. Amplitudes are real and
imaginary parts with 12 significant digits.
"""

from pathlib import Path

from .errors import ParseError, SchemaError
from .fock import DofSchema, FockKet, StateVector

_FORBIDDEN = set(" \t,:|#")


def _g12(x):
    return f"{x + 0.0:.12g}"


def _check_label(label):
    if not label or _FORBIDDEN & set(label):
        raise SchemaError(f"label {label!r} cannot be written (no whitespace or ',:|#')")


def format_state(s: StateVector):
    lines = [f"photon_number {s.photon_number}"]
    for name, labels in s.schema.dofs:
        for lab in (name, *labels):
            _check_label(lab)
        lines.append(f"dof {name} {' '.join(labels)}")
    for ket, amp in s.items():
        pairs = " ".join(f"{','.join(s.schema.labels(m))}:{n}" for m, n in ket)
        body = f"{pairs} | " if pairs else "| "
        lines.append(f"ket {body}{_g12(amp.real)} {_g12(amp.imag)}")
    return "\n".join(lines) + "\n"


def parse_state(text):
    photon_number = None
    dofs = []
    schema = None
    terms = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "photon_number":
            if photon_number is not None:
                raise ParseError("photon_number given twice", lineno)
            try:
                photon_number = int(rest)
            except ValueError:
                raise ParseError(f"bad photon number {rest!r}", lineno) from None
            if photon_number < 0:
                raise ParseError("photon number must be non-negative", lineno)
        elif head == "dof":
            if schema is not None:
                raise ParseError("dof lines must precede ket lines", lineno)
            fields = rest.split()
            if len(fields) < 2:
                raise ParseError("dof line needs a name and at least one label", lineno)
            dofs.append((fields[0], fields[1:]))
        elif head == "ket":
            if photon_number is None or not dofs:
                raise ParseError("ket before photon_number/dof header", lineno)
            if schema is None:
                try:
                    schema = DofSchema(dofs)
                except SchemaError as exc:
                    raise ParseError(str(exc), lineno) from None
            ket, amp = _parse_ket(schema, rest, lineno)
            if ket.total != photon_number:
                raise ParseError(f"ket holds {ket.total} photons, header says {photon_number}", lineno)
            if ket in terms:
                raise ParseError("duplicate ket", lineno)
            terms[ket] = amp
        else:
            raise ParseError(f"unknown record {head!r}", lineno)
    if photon_number is None or not dofs:
        raise ParseError("state document lacks photon_number or dof lines")
    if schema is None:
        schema = DofSchema(dofs)
    try:
        return StateVector(schema, photon_number, terms)
    except SchemaError as exc:
        raise ParseError(str(exc)) from None


def _parse_ket(schema, rest, lineno):
    modes_part, bar, amp_part = rest.partition("|")
    if not bar:
        raise ParseError("ket line needs '|' before the amplitude", lineno)
    counts = {}
    for token in modes_part.split():
        labels, colon, count = token.rpartition(":")
        if not colon:
            raise ParseError(f"mode token {token!r} lacks ':count'", lineno)
        try:
            n = int(count)
            mode = schema.mode(*labels.split(","))
        except (ValueError, SchemaError) as exc:
            raise ParseError(f"bad mode token {token!r}: {exc}", lineno) from None
        if n <= 0:
            raise ParseError(f"count must be positive in {token!r}", lineno)
        if mode in counts:
            raise ParseError(f"mode repeated in {token!r}", lineno)
        counts[mode] = n
    fields = amp_part.split()
    if len(fields) != 2:
        raise ParseError("amplitude must be '<real> <imag>'", lineno)
    try:
        amp = complex(float(fields[0]), float(fields[1]))
    except ValueError:
        raise ParseError(f"bad amplitude {amp_part.strip()!r}", lineno) from None
    return FockKet(counts), amp


def load_state(path):
    return parse_state(Path(path).read_text())


def save_state(s, path):
    Path(path).write_text(format_state(s))
