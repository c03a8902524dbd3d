"""Text grammar for rings, forms, subgroups, atoms and objects.

EBNF (whitespace is ignored between tokens)::

    ring      = "Q[" name { "," name } "]" ;
    form      = term { ("+" | "-") term } ;            (* e.g. x+2y *)
    term      = [ int ] name | int ;
    forms     = form { "," form } ;
    subgroup  = "G" | "1" | "circle(" int "," int ")" ;
    rep       = int "z" | euler ;
    euler     = "e[" char { "+" char } "]" ;
    char      = "(" int { "," int } ")" [ "^" int ] ;
    atom      = base [ "@" name ] ;
    base      = "cyc(" int [ "," int ] ")" | "dual" | "tate" | "k" | "lcoh"
              | "free(" int ")" | "koszul(" int ")" | "trunc(" int ")"
              | "quot(" mono { "," mono } ")"
              | "fg(" "[" ints "]" "," "[" rels "]" ")"
              | "susp(" int "," atom ")" | "sum(" [ atom { "," atom } ] ")" ;
    mono      = name [ "^" int ] { "*" name [ "^" int ] } ;
    object    = ( "f(" | "a(" ) subgroup "," "(" ( atom | space ) ")" ")"
              | "b(" subgroup "," rep "," int ")"
              | "prod(" object { "," object } ")"
              | "obj1(" "[" parities "]" "," "(" atom ")" "," matrix ")"
              | "obj2(" "[" parities "]" "," "[" { subgroup ":" "(" atom ")" } "]"
                "," ( "(" atom ")" | "none" ) [ "," "q=[" { subgroup ":" matrix } "]" ] ")" ;
    space     = "Q" [ "^" int ] | int ":" int { "," int ":" int } ;   (* at G only *)
    matrix    = "[" { "[" number { "," number } "]" } "]" ;     (* one row per dual atom *)

Atoms are read over k[c] for rank 1 and over Q[x,y] for rank 2.  Over
Q[x,y] the torsion atoms ``dual``, ``k``, ``koszul(n)``, ``quot(...)`` and
``fg(...)`` denote graded duals (Artinian modules) of the corresponding
finitely generated modules.  Errors carry the line and column.
"""

from __future__ import annotations

from fractions import Fraction

from .atcat import P2, AtObject, Rank2Object, b_object, mk_a, mk_f, product
from .gmod import KC, CyclicTorsion, Free, GradedDual, KoszulQuot, LocCohTop, Sum, Suspension, Tate, TruncatedFamily
from .homalg import as_kc
from .kcmod import Cyc, Dual, KcModule
from .polymod import ArtinianModule, FGModule
from .qlinalg import Mat
from .rings import G1, G2, TRIVIAL1, TRIVIAL2, ConnSubgroup, EulerClass, LinearForm, Poly, PolyRing, circle

__all__ = [
    "ParseError",
    "parse_ring",
    "parse_forms",
    "parse_subgroup",
    "parse_rep",
    "parse_atom",
    "parse_object",
    "print_object",
    "print_atom",
    "same_object",
]


class ParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.column = line, col


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            self.fail(f"expected {s!r}")

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def int(self) -> int:
        self.ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or not self.text[start:self.pos].lstrip("+-"):
            self.pos = start
            self.fail("expected an integer")
        return int(self.text[start:self.pos])

    def number(self) -> Fraction:
        a = self.int()
        if self.eat("/"):
            return Fraction(a, self.int())
        return Fraction(a)

    def name(self) -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_+~<>"):
            if self.text[self.pos] == "+" and self.pos == start:
                break
            self.pos += 1
        if self.pos == start:
            self.fail("expected a name")
        return self.text[start:self.pos]

    def ident(self) -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.fail("expected a name")
        return self.text[start:self.pos]

    def end(self):
        self.ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing input")


def _whole(fn):
    def run(text: str, *args, **kw):
        r = _Reader(text)
        out = fn(r, *args, **kw)
        r.end()
        return out

    run.__doc__ = fn.__doc__
    return run


def _ring(r: _Reader) -> PolyRing:
    r.expect("Q[")
    names = [r.ident()]
    while r.eat(","):
        names.append(r.ident())
    r.expect("]")
    return PolyRing(tuple(names))


def _form(r: _Reader, names: tuple[str, ...]) -> LinearForm:
    coeffs = [0] * len(names)
    sign = -1 if r.eat("-") else 1
    while True:
        r.ws()
        k = 1
        if r.pos < len(r.text) and r.text[r.pos].isdigit():
            k = r.int()
        if r.pos < len(r.text) and r.text[r.pos].isalpha():
            v = r.ident()
            if v not in names:
                r.pos -= len(v)
                r.fail(f"unknown variable {v!r}")
            coeffs[names.index(v)] += sign * k
        else:
            r.fail("expected a variable")
        if r.eat("+"):
            sign = 1
        elif r.eat("-"):
            sign = -1
        else:
            break
    try:
        return LinearForm(tuple(coeffs))
    except ValueError as e:
        r.fail(str(e))


def _forms(r: _Reader, names) -> list[LinearForm]:
    out = [_form(r, names)]
    while r.eat(","):
        out.append(_form(r, names))
    return out


def _subgroup(r: _Reader, rank: int) -> ConnSubgroup:
    if r.eat("circle("):
        p = r.int()
        r.expect(",")
        q = r.int()
        r.expect(")")
        try:
            return circle(p, q)
        except ValueError as e:
            r.fail(str(e))
    if r.eat("G"):
        return G1 if rank == 1 else G2
    if r.eat("1"):
        return TRIVIAL1 if rank == 1 else TRIVIAL2
    r.fail("expected a subgroup (G, 1 or circle(p,q))")


def _rep(r: _Reader, rank: int):
    if r.eat("e["):
        chars = []
        while True:
            r.expect("(")
            ch = [r.int()]
            while r.eat(","):
                ch.append(r.int())
            r.expect(")")
            m = r.int() if r.eat("^") else 1
            chars.append((tuple(ch), m))
            if not r.eat("+"):
                break
        r.expect("]")
        return EulerClass.of(rank, chars)
    n = r.int()
    if r.eat("z"):
        return n
    if n == 0:
        return 0
    r.fail("expected a representation such as 2z or e[(1,0)]")


def _mono(r: _Reader, ring: PolyRing) -> tuple[int, ...]:
    e = [0] * ring.nvars
    while True:
        v = r.ident()
        if v not in ring.names:
            r.pos -= len(v)
            r.fail(f"unknown variable {v!r}")
        e[ring.names.index(v)] += r.int() if r.eat("^") else 1
        if not r.eat("*"):
            break
    return tuple(e)


def _poly(r: _Reader, ring: PolyRing) -> Poly:
    terms: dict = {}
    sign = -1 if r.eat("-") else 1
    while True:
        r.ws()
        c = Fraction(1)
        if r.pos < len(r.text) and r.text[r.pos].isdigit():
            c = r.number()
            r.eat("*")
        r.ws()
        if r.pos < len(r.text) and r.text[r.pos].isalpha():
            e = _mono(r, ring)
        else:
            e = (0,) * ring.nvars
        terms[e] = terms.get(e, 0) + sign * c
        if r.eat("+"):
            sign = 1
        elif r.eat("-"):
            sign = -1
        else:
            break
    return Poly(ring, terms)


def _atom(r: _Reader, ring: PolyRing):
    a = _base(r, ring)
    if r.eat("@"):
        label = r.ident()
        a = _relabel(as_kc(a), label)
    return a


def _relabel(T: KcModule, label: str) -> KcModule:
    return KcModule(
        tuple(Cyc(a.shift, a.n, label) if isinstance(a, Cyc) else Dual(a.shift, label) for a in T.atoms)
    )


def _base(r: _Reader, ring: PolyRing):
    kc = ring == KC
    if r.eat("cyc("):
        a = r.int()
        if r.eat(","):
            n = r.int()
        else:
            a, n = 0, a
        r.expect(")")
        if n < 1:
            r.fail("cyc needs n >= 1")
        return CyclicTorsion(a, n)
    if r.eat("susp("):
        s = r.int()
        r.expect(",")
        inner = _atom(r, ring)
        r.expect(")")
        return inner.suspend(s) if isinstance(inner, (ArtinianModule, KcModule)) else Suspension(s, inner)
    if r.eat("sum("):
        if kc and r.eat(")"):
            return KcModule(())
        parts = [_atom(r, ring)]
        while r.eat(","):
            parts.append(_atom(r, ring))
        r.expect(")")
        if kc:
            return Sum(parts)
        return _artinian_sum(parts, r)
    if r.eat("free("):
        s = r.int()
        r.expect(")")
        return Free(s, ring)
    if r.eat("koszul("):
        n = r.int()
        r.expect(")")
        return KoszulQuot(ring, n) if kc else ArtinianModule(FGModule.koszul_quotient(ring, n))
    if r.eat("trunc("):
        n = r.int()
        r.expect(")")
        return TruncatedFamily(n, ring)
    if r.eat("quot("):
        gens = [_mono(r, ring)]
        while r.eat(","):
            gens.append(_mono(r, ring))
        r.expect(")")
        return ArtinianModule(FGModule.monomial_quotient(ring, gens))
    if r.eat("fg("):
        r.expect("[")
        degs = []
        if not r.peek("]"):
            degs.append(r.int())
            while r.eat(","):
                degs.append(r.int())
        r.expect("]")
        r.expect(",")
        r.expect("[")
        rels = []
        while r.eat("["):
            row = [_poly(r, ring)]
            while r.eat(","):
                row.append(_poly(r, ring))
            r.expect("]")
            rels.append(tuple(row))
            if not r.eat(","):
                break
        r.expect("]")
        r.expect(")")
        try:
            return ArtinianModule(FGModule(ring, tuple(degs), tuple(rels)))
        except ValueError as e:
            r.fail(str(e))
    if r.eat("dual"):
        return GradedDual(ring) if kc else ArtinianModule(FGModule.free(ring, [0]))
    if r.eat("tate"):
        return Tate()
    if r.eat("lcoh"):
        return LocCohTop(ring)
    if r.eat("k"):
        return CyclicTorsion(0, 1) if kc else ArtinianModule(FGModule.residue_field(ring))
    r.fail("expected an atom")


def _artinian_sum(parts, r: _Reader) -> ArtinianModule:
    if not all(isinstance(p, ArtinianModule) for p in parts):
        r.fail("sums over Q[x,y] need Artinian summands")
    out = parts[0].dual
    for p in parts[1:]:
        out = out + p.dual
    return ArtinianModule(out)


def _object(r: _Reader, rank: int):
    ring = KC if rank == 1 else P2
    if r.eat("prod("):
        parts = [_object(r, rank)]
        while r.eat(","):
            parts.append(_object(r, rank))
        r.expect(")")
        if rank != 1:
            r.fail("products are only assembled for rank 1")
        return product(parts)
    if r.eat("obj1("):
        V = _int_list(r)
        r.expect(",")
        r.expect("(")
        T = as_kc(_atom(r, ring))
        r.expect(")")
        r.expect(",")
        q = _matrix(r, len(V))
        r.expect(")")
        try:
            return AtObject.make(V, T, q)
        except ValueError as e:
            r.fail(str(e))
    if r.eat("obj2("):
        V = _int_list(r)
        r.expect(",")
        r.expect("[")
        circles = []
        while not r.peek("]"):
            K = _subgroup(r, 2)
            r.expect(":")
            r.expect("(")
            circles.append((K, as_kc(_atom(r, KC))))
            r.expect(")")
            if not r.eat(","):
                break
        r.expect("]")
        r.expect(",")
        one = None
        if not r.eat("none"):
            r.expect("(")
            one = _atom(r, P2)
            r.expect(")")
        q = []
        if r.eat(","):
            r.expect("q=[")
            while not r.peek("]"):
                K = _subgroup(r, 2)
                r.expect(":")
                T = dict(circles).get(K)
                if T is None:
                    r.fail(f"no component at {K}")
                q.append((K, Mat(_matrix(r, len(V)), len(V)) if T.duals() else Mat.zeros(0, len(V))))
                if not r.eat(","):
                    break
            r.expect("]")
        r.expect(")")
        try:
            return Rank2Object(V=tuple(V), circles=tuple(circles), one=one, q=tuple(q))
        except ValueError as e:
            r.fail(str(e))
    for key, ctor in (("f(", mk_f), ("a(", mk_a)):
        if r.eat(key):
            K = _subgroup(r, rank)
            r.expect(",")
            r.expect("(")
            start = r.pos
            if K.kind == "G":
                T = _graded_space(r)
            else:
                T = _atom(r, KC if K.kind == "circle" or rank == 1 else P2)
            r.expect(")")
            r.expect(")")
            try:
                return ctor(K, T)
            except (ValueError, TypeError) as e:
                r.pos = start
                r.fail(str(e))
    if r.eat("b("):
        K = _subgroup(r, rank)
        r.expect(",")
        V = _rep(r, rank)
        r.expect(",")
        n = r.int()
        r.expect(")")
        try:
            return b_object(K, V, n)
        except ValueError as e:
            r.fail(str(e))
    r.fail("expected an object: f(..), a(..), b(..), prod(..), obj1(..) or obj2(..)")


def _graded_space(r: _Reader) -> dict:
    """``Q`` or ``Q^n`` in degree 0, or a list ``d:n, ...``."""
    if r.eat("Q"):
        n = r.int() if r.eat("^") else 1
        return {0: n}
    out = {}
    while True:
        d = r.int()
        r.expect(":")
        out[d] = out.get(d, 0) + r.int()
        if not r.eat(","):
            break
    return out


def _int_list(r: _Reader) -> list[int]:
    r.expect("[")
    out = []
    if not r.peek("]"):
        out.append(r.int())
        while r.eat(","):
            out.append(r.int())
    r.expect("]")
    return out


def _matrix(r: _Reader, ncols: int) -> list[list[Fraction]]:
    r.expect("[")
    rows = []
    while r.eat("["):
        row = []
        if not r.peek("]"):
            row.append(r.number())
            while r.eat(","):
                row.append(r.number())
        r.expect("]")
        if len(row) != ncols:
            r.fail(f"matrix rows need {ncols} entries")
        rows.append(row)
        if not r.eat(","):
            break
    r.expect("]")
    return rows


@_whole
def parse_ring(r: _Reader) -> PolyRing:
    """``Q[x,y]``."""
    return _ring(r)


def parse_forms(text: str, names: tuple[str, ...]) -> list[LinearForm]:
    """Comma separated linear forms such as ``y, x+y``."""
    r = _Reader(text)
    out = _forms(r, tuple(names))
    r.end()
    return out


@_whole
def parse_subgroup(r: _Reader, rank: int = 2) -> ConnSubgroup:
    return _subgroup(r, rank)


@_whole
def parse_rep(r: _Reader, rank: int = 1):
    return _rep(r, rank)


@_whole
def parse_atom(r: _Reader, ring: PolyRing = KC):
    return _atom(r, ring)


@_whole
def parse_object(r: _Reader, rank: int = 1):
    return _object(r, rank)


# --------------------------------------------------------------------------
# printing


def _print_kc(T: KcModule) -> str:
    parts = []
    for a in T.atoms:
        base = f"cyc({a.shift},{a.n})" if isinstance(a, Cyc) else (f"susp({a.shift},dual)" if a.shift else "dual")
        parts.append(base if a.label == "1" else f"{base}@{a.label}")
    if not parts:
        return "sum()"
    return parts[0] if len(parts) == 1 else "sum(" + ",".join(parts) + ")"


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _print_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in sorted(p.terms.items(), reverse=True):
        mono = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(p.ring.names, e) if k
        )
        sign = "-" if c < 0 else "+"
        mag = _frac(abs(c))
        body = mono if mag == "1" and mono else (f"{mag}*{mono}" if mono else mag)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += sign + body
    return s


def _print_artinian(A: ArtinianModule) -> str:
    N = A.dual
    degs = ",".join(map(str, N.gen_degrees))
    rels = ",".join("[" + ",".join(_print_poly(p) for p in row) + "]" for row in N.relations)
    return f"fg([{degs}],[{rels}])"


def _print_mat(m: Mat) -> str:
    return "[" + ",".join("[" + ",".join(_frac(x) for x in row) + "]" for row in m.rows) + "]"


def print_atom(T) -> str:
    if isinstance(T, KcModule):
        return _print_kc(T)
    if isinstance(T, ArtinianModule):
        return _print_artinian(T)
    return _print_kc(as_kc(T))


def print_object(X) -> str:
    """Text that :func:`parse_object` reads back to an equal object."""
    if isinstance(X, AtObject):
        if any(lab != "1" for _, lab in X.V):
            raise ValueError("labelled V is not printable")
        V = ",".join(str(p) for p, _ in X.V)
        return f"obj1([{V}],({_print_kc(X.T)}),{_print_mat(X.q)})"
    if isinstance(X, Rank2Object):
        if X.family is not None:
            _, L, T = X.family
            return f"a({L},({print_atom(T)}))"
        if X.b_n is not None:
            K = next(iter(X.support()))
            return f"b({K},0,{X.b_n})"
        V = ",".join(map(str, X.V))
        circ = ",".join(f"{K}:({_print_kc(T)})" for K, T in X.circles)
        one = "none" if X.one is None else f"({_print_artinian(X.one)})"
        q = ""
        if X.q:
            q = ",q=[" + ",".join(f"{K}:{_print_mat(m)}" for K, m in X.q) + "]"
        return f"obj2([{V}],[{circ}],{one}{q})"
    raise TypeError(f"cannot print {X!r}")


def _same_fg(a: FGModule, b: FGModule) -> bool:
    return a.ring == b.ring and a.gen_degrees == b.gen_degrees and a.relations == b.relations


def same_object(X, Y) -> bool:
    if isinstance(X, AtObject) and isinstance(Y, AtObject):
        return X.same_as(Y)
    if isinstance(X, Rank2Object) and isinstance(Y, Rank2Object):
        ones = (X.one is None and Y.one is None) or (
            X.one is not None and Y.one is not None and _same_fg(X.one.dual, Y.one.dual)
        )
        qs = dict((K, m.rows) for K, m in X.q) == dict((K, m.rows) for K, m in Y.q)
        fam = (X.family is None) == (Y.family is None) and (
            X.family is None or (X.family[1] == Y.family[1] and print_atom(X.family[2]) == print_atom(Y.family[2]))
        )
        return X.V == Y.V and X.circles == Y.circles and ones and qs and fam and X.b_n == Y.b_n
    return False
