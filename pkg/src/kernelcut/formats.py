"""Line-oriented text formats for every instance type.

Each file starts with ``problem <tag> version 1``. The remaining lines are
``keyword values...``; blank lines and ``#`` comments are ignored. Rationals
are written ``p/q`` or as integers, sets as space-separated element ids.
Polynomial monomials are ``exponents... : coefficient``.

``parse(serialize(x)) == x`` holds for every supported instance.
"""

from .errors import ValidationError
from .exact import format_rational, parse_rational
from .few_sizes import GroupedKnapsack, GroupedSubsetSum
from .ft_core import CompressionRequest
from .numeric import BinPackingInstance, KnapsackInstance, MaxCutInstance, SubsetSumInstance
from .oracles import CnfFormula
from .polyprog import IppInstance, Polynomial
from .setsystems import SetSystemInstance, Variant

VERSION = 1


def _rats(values):
    return " ".join(format_rational(v) for v in values)


def _ints(values):
    return " ".join(str(v) for v in values)


def _line(keyword, rest=""):
    return f"{keyword} {rest}".rstrip()


class _Lines:
    """Tokenised body lines with their 1-based line numbers."""

    def __init__(self, text):
        self.rows = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.rows.append((lineno, line))
        if not self.rows:
            raise ValidationError("empty file", 1)
        lineno, header = self.rows.pop(0)
        parts = header.split()
        if len(parts) != 4 or parts[0] != "problem" or parts[2] != "version":
            raise ValidationError("header must read 'problem <tag> version 1'", lineno)
        if parts[3] != str(VERSION):
            raise ValidationError(f"unsupported format version {parts[3]!r}", lineno)
        self.tag = parts[1]
        self.header_line = lineno

    def split(self):
        for lineno, line in self.rows:
            keyword, _, rest = line.partition(" ")
            yield lineno, keyword, rest.strip()


def _int(text, lineno):
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"expected an integer, got {text!r}", lineno) from None


def _int_list(text, lineno):
    return [_int(t, lineno) for t in text.split()]


def _rat_list(text, lineno):
    return [parse_rational(t, lineno) for t in text.split()]


def _single_rat(text, lineno):
    values = text.split()
    if len(values) != 1:
        raise ValidationError("expected exactly one value", lineno)
    return parse_rational(values[0], lineno)


def _single_int(text, lineno):
    values = text.split()
    if len(values) != 1:
        raise ValidationError("expected exactly one value", lineno)
    return _int(values[0], lineno)


def _keyed(lines, spec, repeated=()):
    """Collect ``keyword -> (lineno, value)``; keywords in ``repeated`` gather lists."""
    found = {}
    lists = {key: [] for key in repeated}
    for lineno, keyword, rest in lines.split():
        if keyword in lists:
            lists[keyword].append((lineno, rest))
            continue
        if keyword not in spec:
            raise ValidationError(f"unknown keyword {keyword!r} for {lines.tag}", lineno)
        if keyword in found:
            raise ValidationError(f"keyword {keyword!r} given twice", lineno)
        found[keyword] = (lineno, spec[keyword](rest, lineno))
    return found, lists


def _require(found, keys, lines, default=None):
    out = []
    for key in keys:
        if key in found:
            out.append(found[key][1])
        elif default is not None and key in default:
            out.append(default[key])
        else:
            raise ValidationError(f"missing keyword {key!r}", lines.header_line)
    return out


def _build(factory, lineno, *args):
    """Run a constructor, attaching a line number to its validation errors."""
    try:
        return factory(*args)
    except ValidationError as exc:
        if exc.line is not None:
            raise
        raise ValidationError(str(exc), lineno) from None


def _monomial(text, lineno):
    left, sep, right = text.partition(":")
    if not sep:
        raise ValidationError("monomial must read 'exponents... : coefficient'", lineno)
    return tuple(_int_list(left, lineno)), _single_rat(right, lineno)


def _format_poly_body(f):
    return [f"{_ints(e)} : {format_rational(c)}".lstrip() for e, c in f.monomials]


# serialization -------------------------------------------------------------


def serialize(obj) -> str:
    tag, body = _SERIALIZERS[type(obj)](obj)
    return "\n".join([f"problem {tag} version {VERSION}"] + body) + "\n"


def _ser_vector(req):
    return "vector", [_line("N", req.N), _line("w", _rats(req.w))]


def _ser_knapsack(inst):
    return "knapsack", [
        _line("w", _rats(inst.w)),
        _line("p", _rats(inst.p)),
        _line("W", format_rational(inst.W)),
        _line("P", format_rational(inst.P)),
    ]


def _ser_subset_sum(inst):
    return "subset-sum", [_line("a", _ints(inst.a)), _line("b", inst.b)]


def _ser_max_cut(inst):
    body = [_line("vertices", _ints(inst.vertices)), _line("W", format_rational(inst.W))]
    body += [f"edge {u} {v} {format_rational(w)}" for (u, v), w in zip(inst.edges, inst.weights)]
    return "max-cut", body


def _ser_bin_packing(inst):
    return "bin-packing", [_line("items", _ints(inst.items)), _line("b", inst.b), _line("k", inst.k)]


def _ser_set_system(inst):
    body = [
        _line("d", inst.d),
        _line("k", inst.k),
        _line("W", format_rational(inst.W)),
        _line("universe", _ints(inst.universe)),
        _line("weights", _rats(inst.weights)),
    ]
    body += [_line("set", _ints(sorted(s))) for s in inst.family]
    return inst.variant.value, body


def _ser_grouped_knapsack(inst):
    body = [_line("W", format_rational(inst.W)), _line("P", format_rational(inst.P))]
    body += [f"group {format_rational(w)} : {_rats(vs)}" for w, vs in zip(inst.weights, inst.values)]
    return "grouped-knapsack", body


def _ser_grouped_subset_sum(inst):
    body = [_line("t", inst.t)]
    body += [f"group {s} {m}" for s, m in zip(inst.sizes, inst.multiplicities)]
    return "grouped-subset-sum", body


def _poly_header(f):
    body = [_line("n", f.n), _line("d", bin(f.d)[2:])]
    if f.keep_zeros:
        body.append("zeros allowed")
    return body


def _ser_polynomial(f):
    return "polynomial", _poly_header(f) + [_line("mono", m) for m in _format_poly_body(f)]


def _ser_ipp(inst):
    # d and u are written in binary
    body = _poly_header(inst.c) + [_line("u", bin(inst.u)[2:])]
    body.append(_line("objective", format_rational(inst.z)))
    body += [_line("mono", m) for m in _format_poly_body(inst.c)]
    for g, b in zip(inst.constraints, inst.bounds):
        body.append(_line("constraint", format_rational(b)))
        body += [_line("mono", m) for m in _format_poly_body(g)]
    return "ipp", body


def _ser_cnf(phi):
    return "cnf", [_line("n", phi.n)] + [_line("clause", _ints(c)) for c in phi.clauses]


_SERIALIZERS = {
    CompressionRequest: _ser_vector,
    KnapsackInstance: _ser_knapsack,
    SubsetSumInstance: _ser_subset_sum,
    MaxCutInstance: _ser_max_cut,
    BinPackingInstance: _ser_bin_packing,
    SetSystemInstance: _ser_set_system,
    GroupedKnapsack: _ser_grouped_knapsack,
    GroupedSubsetSum: _ser_grouped_subset_sum,
    Polynomial: _ser_polynomial,
    IppInstance: _ser_ipp,
    CnfFormula: _ser_cnf,
}


# parsing -------------------------------------------------------------------


def _parse_vector(lines):
    found, _ = _keyed(lines, {"N": _single_int, "w": _rat_list})
    N, w = _require(found, ["N", "w"], lines)
    return _build(CompressionRequest, lines.header_line, tuple(w), N)


def _parse_knapsack(lines):
    found, _ = _keyed(lines, {"w": _rat_list, "p": _rat_list, "W": _single_rat, "P": _single_rat})
    w, p, W, P = _require(found, ["w", "p", "W", "P"], lines, {"w": [], "p": []})
    return _build(KnapsackInstance, lines.header_line, tuple(w), tuple(p), W, P)


def _parse_subset_sum(lines):
    found, _ = _keyed(lines, {"a": _int_list, "b": _single_int})
    a, b = _require(found, ["a", "b"], lines, {"a": []})
    return _build(SubsetSumInstance, lines.header_line, tuple(a), b)


def _parse_max_cut(lines):
    found, lists = _keyed(lines, {"vertices": _int_list, "W": _single_rat}, repeated=("edge",))
    vertices, W = _require(found, ["vertices", "W"], lines, {"vertices": []})
    edges, weights = [], []
    for lineno, rest in lists["edge"]:
        parts = rest.split()
        if len(parts) != 3:
            raise ValidationError("edge must read 'edge u v weight'", lineno)
        edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
        weights.append(parse_rational(parts[2], lineno))
    last = lists["edge"][-1][0] if lists["edge"] else lines.header_line
    return _build(MaxCutInstance, last, tuple(vertices), tuple(edges), tuple(weights), W)


def _parse_bin_packing(lines):
    found, _ = _keyed(lines, {"items": _int_list, "b": _single_int, "k": _single_int})
    items, b, k = _require(found, ["items", "b", "k"], lines, {"items": []})
    return _build(BinPackingInstance, lines.header_line, tuple(items), b, k)


def _parse_set_system(lines):
    spec = {"d": _single_int, "k": _single_int, "W": _single_rat, "universe": _int_list, "weights": _rat_list}
    found, lists = _keyed(lines, spec, repeated=("set",))
    d, k, W, universe, weights = _require(
        found, ["d", "k", "W", "universe", "weights"], lines, {"universe": [], "weights": []}
    )
    family = []
    for lineno, rest in lists["set"]:
        members = _int_list(rest, lineno)
        if len(set(members)) != len(members):
            raise ValidationError("set lists an element twice", lineno)
        if len(members) != d:
            raise ValidationError(f"set has {len(members)} elements, expected {d}", lineno)
        family.append(frozenset(members))
    last = lists["set"][-1][0] if lists["set"] else lines.header_line
    return _build(SetSystemInstance, last, tuple(universe), tuple(family), tuple(weights), k, W, lines.tag, d)


def _parse_grouped_knapsack(lines):
    found, lists = _keyed(lines, {"W": _single_rat, "P": _single_rat}, repeated=("group",))
    W, P = _require(found, ["W", "P"], lines, {"P": 0})
    weights, values = [], []
    for lineno, rest in lists["group"]:
        left, sep, right = rest.partition(":")
        if not sep:
            raise ValidationError("group must read 'group weight : values...'", lineno)
        weights.append(_single_rat(left, lineno))
        values.append(tuple(_rat_list(right, lineno)))
    last = lists["group"][-1][0] if lists["group"] else lines.header_line
    return _build(GroupedKnapsack, last, tuple(weights), tuple(values), W, P)


def _parse_grouped_subset_sum(lines):
    found, lists = _keyed(lines, {"t": _single_int}, repeated=("group",))
    (t,) = _require(found, ["t"], lines)
    sizes, mults = [], []
    for lineno, rest in lists["group"]:
        parts = _int_list(rest, lineno)
        if len(parts) != 2:
            raise ValidationError("group must read 'group size multiplicity'", lineno)
        sizes.append(parts[0])
        mults.append(parts[1])
    last = lists["group"][-1][0] if lists["group"] else lines.header_line
    return _build(GroupedSubsetSum, last, tuple(sizes), tuple(mults), t)


def _binary(text, lineno):
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValidationError(f"expected a binary integer, got {text!r}", lineno)
    return int(text, 2)


def _poly_sections(lines, top_level):
    """Header keywords, then sections introduced by the keywords in ``top_level``."""
    header = {}
    sections = []
    zeros = False
    for lineno, keyword, rest in lines.split():
        if keyword == "mono":
            if not sections:
                sections.append((lineno, None, []))
            sections[-1][2].append((lineno, _monomial(rest, lineno)))
        elif keyword in top_level:
            sections.append((lineno, (keyword, _single_rat(rest, lineno)), []))
        elif keyword == "zeros" and rest == "allowed":
            zeros = True
        elif keyword in ("n", "d", "u"):
            if keyword in header:
                raise ValidationError(f"keyword {keyword!r} given twice", lineno)
            header[keyword] = _single_int(rest, lineno) if keyword == "n" else _binary(rest, lineno)
        else:
            raise ValidationError(f"unknown keyword {keyword!r} for {lines.tag}", lineno)
    for key in ("n", "d"):
        if key not in header:
            raise ValidationError(f"missing keyword {key!r}", lines.header_line)
    return header, sections, zeros


def _poly_from(header, monos, zeros, lineno):
    return _build(Polynomial, lineno, header["n"], header["d"], tuple(m for _, m in monos), zeros)


def _parse_polynomial(lines):
    header, sections, zeros = _poly_sections(lines, ())
    if "u" in header:
        raise ValidationError("keyword 'u' is not used by polynomial files", lines.header_line)
    monos = sections[0][2] if sections else []
    return _poly_from(header, monos, zeros, monos[-1][0] if monos else lines.header_line)


def _parse_ipp(lines):
    header, sections, zeros = _poly_sections(lines, ("objective", "constraint"))
    if "u" not in header:
        raise ValidationError("missing keyword 'u'", lines.header_line)
    if not sections or sections[0][1] is None or sections[0][1][0] != "objective":
        raise ValidationError("the objective section must come first", lines.header_line)
    if any(s[1] is None or s[1][0] != "constraint" for s in sections[1:]):
        raise ValidationError("only one objective section is allowed", sections[1][0])
    polys = [_poly_from(header, monos, zeros, lineno) for lineno, _, monos in sections]
    bounds = [s[1][1] for s in sections]
    return _build(IppInstance, lines.header_line, polys[0], tuple(polys[1:]), tuple(bounds[1:]), bounds[0], header["u"])


def _parse_cnf(lines):
    found, lists = _keyed(lines, {"n": _single_int}, repeated=("clause",))
    (n,) = _require(found, ["n"], lines)
    clauses = []
    for lineno, rest in lists["clause"]:
        clause = tuple(_int_list(rest, lineno))
        _build(CnfFormula, lineno, n, (clause,))
        clauses.append(clause)
    return _build(CnfFormula, lines.header_line, n, tuple(clauses))


_PARSERS = {
    "vector": _parse_vector,
    "knapsack": _parse_knapsack,
    "subset-sum": _parse_subset_sum,
    "max-cut": _parse_max_cut,
    "bin-packing": _parse_bin_packing,
    Variant.HITTING_SET.value: _parse_set_system,
    Variant.SET_PACKING.value: _parse_set_system,
    "grouped-knapsack": _parse_grouped_knapsack,
    "grouped-subset-sum": _parse_grouped_subset_sum,
    "polynomial": _parse_polynomial,
    "ipp": _parse_ipp,
    "cnf": _parse_cnf,
}

TAGS = tuple(_PARSERS)


def parse(text):
    lines = _Lines(text)
    parser = _PARSERS.get(lines.tag)
    if parser is None:
        raise ValidationError(f"unknown problem tag {lines.tag!r}", lines.header_line)
    return parser(lines)


def read_tag(text):
    return _Lines(text).tag
