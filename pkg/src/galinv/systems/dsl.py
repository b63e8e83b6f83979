"""Tiny declarative language for first-order field systems (.gal files).

Grammar (extends the basic sketch with a clause target after `rep`, optional
signs on slot entries, general products inside terms, and digit-leading
system names):

    system   := "system" NAME "{" item* "}"
    item     := ("fields"|"sources") "{" (NAME ":" ("scalar"|"vector"))+ "}"
              | "params" "{" NAME+ "}"
              | "rep" ("fields"|"sources"|"resid") REP "on" "(" slot ("," slot)* ")"
              | "eq" NAME ":" expr "=" expr
    REP      := "D" "(" INT "," INT "," INT ")"
    slot     := ["-"] NAME
    expr     := term (("+"|"-") term)*
    term     := factor ("*" factor)*
    factor   := ["-"] atom
    atom     := NUMBER | NAME | FUNC "(" expr ("," expr)* ")" | "(" expr ")"
    FUNC     := dt | grad | div | curl | dot | cross
    NUMBER   := INT [ "/" INT ]          # exact rational literal

Comments run from "#" to end of line.  Files are UTF-8 with extension .gal.
"""

from gmpy2 import mpq

from ..errors import ParseError
from ..exact.multipoly import MultiPoly
from .model import DERIVS, Equation, FieldSystem, RepSpec, comp_names

FUNCS = ("dt", "grad", "div", "curl", "dot", "cross")


# -- lexer -------------------------------------------------------------------

class Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):
        return "Token(%s, %r)" % (self.kind, self.value)


def tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = text[i:j]
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                tokens.append(Token("NUM", mpq(int(num), int(text[j + 1 : k])), line, col))
                col += k - i
                i = k
            else:
                tokens.append(Token("NUM", mpq(int(num)), line, col))
                col += j - i
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "{}():=+-*,":
            tokens.append(Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    tokens.append(Token("EOF", None, line, col))
    return tokens


# -- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, value=None):
        t = self.next()
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            raise ParseError("expected %r, found %r" % (want, t.value), t.line, t.col)
        return t

    def expect_word(self, word):
        t = self.next()
        if t.kind != "NAME" or t.value != word:
            raise ParseError("expected %r, found %r" % (word, t.value), t.line, t.col)
        return t

    def name_or_number(self):
        t = self.next()
        if t.kind == "NAME":
            return t.value, t
        if t.kind == "NUM" and t.value.denominator == 1:
            return str(t.value), t
        raise ParseError("expected a name, found %r" % (t.value,), t.line, t.col)

    # expression grammar
    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next()
            rhs = self.term()
            node = ("add" if op.kind == "+" else "sub", (op.line, op.col), node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            op = self.next()
            rhs = self.factor()
            node = ("mul", (op.line, op.col), node, rhs)
        return node

    def factor(self):
        t = self.peek()
        if t.kind == "-":
            self.next()
            return ("neg", (t.line, t.col), self.factor())
        return self.atom()

    def atom(self):
        t = self.next()
        if t.kind == "NUM":
            return ("num", (t.line, t.col), t.value)
        if t.kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "NAME":
            if t.value in FUNCS and self.peek().kind == "(":
                self.next()
                args = [self.expr()]
                while self.peek().kind == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                return ("call", (t.line, t.col), t.value, args)
            return ("sym", (t.line, t.col), t.value)
        raise ParseError("unexpected token %r" % (t.value,), t.line, t.col)

    def rep_label(self):
        t = self.expect_word("D")
        self.expect("(")
        nums = []
        for k in range(3):
            nums.append(int(self.expect("NUM").value))
            if k < 2:
                self.expect(",")
        self.expect(")")
        return tuple(nums), t

    def parse_system(self):
        self.expect_word("system")
        name, _ = self.name_or_number()
        self.expect("{")
        fields, sources, params = [], [], []
        reps = {"fields": [], "sources": [], "resid": []}
        eqs = []
        while True:
            t = self.peek()
            if t.kind == "}":
                self.next()
                break
            if t.kind != "NAME":
                raise ParseError("expected a clause, found %r" % (t.value,), t.line, t.col)
            word = t.value
            if word in ("fields", "sources"):
                self.next()
                self.expect("{")
                out = fields if word == "fields" else sources
                while self.peek().kind != "}":
                    nm, tok = self.name_or_number()
                    self.expect(":")
                    kt = self.next()
                    if kt.kind != "NAME" or kt.value not in ("scalar", "vector"):
                        raise ParseError("expected scalar or vector", kt.line, kt.col)
                    out.append((nm, kt.value))
                self.expect("}")
            elif word == "params":
                self.next()
                self.expect("{")
                while self.peek().kind != "}":
                    nm, _ = self.name_or_number()
                    params.append(nm)
                self.expect("}")
            elif word == "rep":
                self.next()
                tgt = self.next()
                if tgt.kind != "NAME" or tgt.value not in ("fields", "sources", "resid"):
                    raise ParseError("rep target must be fields, sources or resid", tgt.line, tgt.col)
                label, _ = self.rep_label()
                self.expect_word("on")
                self.expect("(")
                entries = []
                while True:
                    sign = 1
                    if self.peek().kind == "-":
                        self.next()
                        sign = -1
                    nm, _ = self.name_or_number()
                    entries.append((sign, nm))
                    if self.peek().kind == ",":
                        self.next()
                        continue
                    break
                self.expect(")")
                reps[tgt.value].append((label, entries))
            elif word == "eq":
                self.next()
                nm, _ = self.name_or_number()
                self.expect(":")
                lhs = self.expr()
                self.expect("=")
                rhs = self.expr()
                eqs.append((nm, lhs, rhs))
            else:
                raise ParseError("unknown clause %r" % word, t.line, t.col)
        self.expect("EOF")
        return name, fields, sources, params, reps, eqs


# -- semantic pass -------------------------------------------------------------


class _Builder:
    def __init__(self, name, fields, sources, params, reps, eqs):
        seen = set()
        for nm, _ in fields + sources:
            if nm in seen or nm in params:
                raise ParseError("duplicate declaration %r" % nm, 0, 0)
            seen.add(nm)
        self.sys = FieldSystem(name, fields, sources, params, [])
        self.reps = reps
        self.eq_srcs = eqs

    def value_of_symbol(self, name, pos):
        s = self.sys
        if name in s.params:
            return ("scalar", s.param_var(name))
        kind = s.kind_of(name)
        if kind == "scalar":
            return ("scalar", s.jet_var(name))
        if kind == "vector":
            return ("vector", tuple(s.jet_var(c) for c in comp_names(name, "vector")))
        raise ParseError("undeclared symbol %r" % name, *pos)

    def jet_derivative(self, p, axis, pos):
        s = self.sys
        nparams = len(s.params)
        out = MultiPoly.zero(s.jet_vars)
        for exp, coef in p.terms.items():
            jet_positions = [
                (i, e) for i, e in enumerate(exp) if i >= nparams and e
            ]
            if len(jet_positions) != 1 or jet_positions[0][1] != 1:
                raise ParseError("derivative of a nonlinear field expression", *pos)
            i = jet_positions[0][0]
            rel = i - nparams
            if rel % len(DERIVS) != 0:
                raise ParseError("second-order derivative", *pos)
            e2 = list(exp)
            e2[i] = 0
            e2[i + DERIVS.index(axis)] = 1
            out = out + MultiPoly(s.jet_vars, {tuple(e2): coef})
        return out

    def eval(self, node):
        kind = node[0]
        pos = node[1]
        if kind == "num":
            return ("scalar", MultiPoly.const(self.sys.jet_vars, node[2]))
        if kind == "sym":
            return self.value_of_symbol(node[2], pos)
        if kind == "neg":
            k, v = self.eval(node[2])
            if k == "scalar":
                return (k, -v)
            return (k, tuple(-c for c in v))
        if kind in ("add", "sub"):
            k1, v1 = self.eval(node[2])
            k2, v2 = self.eval(node[3])
            if k1 != k2:
                raise ParseError("cannot combine %s and %s" % (k1, k2), *pos)
            if k1 == "scalar":
                return (k1, v1 + v2 if kind == "add" else v1 - v2)
            if kind == "add":
                return (k1, tuple(a + b for a, b in zip(v1, v2)))
            return (k1, tuple(a - b for a, b in zip(v1, v2)))
        if kind == "mul":
            k1, v1 = self.eval(node[2])
            k2, v2 = self.eval(node[3])
            if k1 == "vector" and k2 == "vector":
                raise ParseError("use dot() or cross() for vector products", *pos)
            if k1 == "scalar" and k2 == "scalar":
                return ("scalar", v1 * v2)
            if k1 == "scalar":
                return ("vector", tuple(v1 * c for c in v2))
            return ("vector", tuple(c * v2 for c in v1))
        if kind == "call":
            fn = node[2]
            args = [self.eval(a) for a in node[3]]
            if fn == "dt":
                self._arity(fn, args, 1, pos)
                k, v = args[0]
                if k == "scalar":
                    return (k, self.jet_derivative(v, "t", pos))
                return (k, tuple(self.jet_derivative(c, "t", pos) for c in v))
            if fn == "grad":
                self._arity(fn, args, 1, pos, kinds=("scalar",))
                _, v = args[0]
                return ("vector", tuple(self.jet_derivative(v, a, pos) for a in "xyz"))
            if fn == "div":
                self._arity(fn, args, 1, pos, kinds=("vector",))
                _, v = args[0]
                return (
                    "scalar",
                    self.jet_derivative(v[0], "x", pos)
                    + self.jet_derivative(v[1], "y", pos)
                    + self.jet_derivative(v[2], "z", pos),
                )
            if fn == "curl":
                self._arity(fn, args, 1, pos, kinds=("vector",))
                _, v = args[0]
                d = self.jet_derivative
                return (
                    "vector",
                    (
                        d(v[2], "y", pos) - d(v[1], "z", pos),
                        d(v[0], "z", pos) - d(v[2], "x", pos),
                        d(v[1], "x", pos) - d(v[0], "y", pos),
                    ),
                )
            if fn == "dot":
                self._arity(fn, args, 2, pos, kinds=("vector", "vector"))
                (_, a), (_, b) = args
                return ("scalar", a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
            if fn == "cross":
                self._arity(fn, args, 2, pos, kinds=("vector", "vector"))
                (_, a), (_, b) = args
                return (
                    "vector",
                    (
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    ),
                )
            raise ParseError("unknown function %r" % fn, *pos)
        raise ParseError("bad expression node %r" % kind, *pos)

    def _arity(self, fn, args, n, pos, kinds=None):
        if len(args) != n:
            raise ParseError("%s takes %d argument(s)" % (fn, n), *pos)
        if kinds:
            for (k, _), want in zip(args, kinds):
                if k != want:
                    raise ParseError("%s needs a %s argument" % (fn, want), *pos)

    def build(self):
        s = self.sys
        for nm, lhs, rhs in self.eq_srcs:
            kl, vl = self.eval(lhs)
            kr, vr = self.eval(rhs)
            # a literal scalar zero coerces to whichever kind the other side has
            zero = MultiPoly.zero(s.jet_vars)
            if kl != kr and kr == "scalar" and vr == zero:
                kr, vr = "vector", (zero, zero, zero)
            if kl != kr and kl == "scalar" and vl == zero:
                kl, vl = "vector", (zero, zero, zero)
            if kl != kr:
                raise ParseError("equation %r mixes scalar and vector" % nm, *lhs[1])
            if kl == "scalar":
                polys = (vl - vr,)
            else:
                polys = tuple(a - b for a, b in zip(vl, vr))
            self._validate_polys(nm, polys, lhs[1])
            s.equations.append(Equation(nm, kl, polys, lhs, rhs))
        for tgt in ("fields", "sources", "resid"):
            for label, entries in self.reps[tgt]:
                valid = (
                    set(n for n, _ in s.fields)
                    if tgt == "fields"
                    else set(n for n, _ in s.sources)
                    if tgt == "sources"
                    else set(eq.name for eq in s.equations)
                )
                for _, n in entries:
                    if n not in valid:
                        raise ParseError("rep %s slot names unknown target %r" % (tgt, n), 0, 0)
                s.rep_specs[tgt].append(RepSpec(label, entries))
        return s

    def _validate_polys(self, nm, polys, pos):
        s = self.sys
        nparams = len(s.params)
        for p in polys:
            for exp in p.terms:
                jet = exp[nparams:]
                fdeg = sum(jet)
                if fdeg == 0:
                    raise ParseError("equation %r has a field-free term" % nm, *pos)
                if fdeg > 2:
                    raise ParseError("equation %r beyond bilinear" % nm, *pos)
                nderiv = sum(
                    e for i, e in enumerate(jet) if i % len(DERIVS) != 0
                )
                if nderiv > 1:
                    raise ParseError("equation %r has a multi-derivative term" % nm, *pos)


def parse(text):
    """Parse one system block; raises ParseError with line/column."""
    p = _Parser(text)
    t = p.peek()
    if t.kind == "EOF":
        raise ParseError("no system block", t.line, t.col)
    parts = p.parse_system()
    return _Builder(*parts).build()


# -- printer -------------------------------------------------------------------


def _print_expr(node, prec=0):
    kind = node[0]
    if kind == "num":
        v = node[2]
        s = str(v.numerator) if v.denominator == 1 else "%s/%s" % (v.numerator, v.denominator)
        return s
    if kind == "sym":
        return node[2]
    if kind == "neg":
        inner = _print_expr(node[2], 2)
        s = "-" + inner
        return "(%s)" % s if prec > 1 else s
    if kind in ("add", "sub"):
        op = " + " if kind == "add" else " - "
        s = _print_expr(node[2], 1) + op + _print_expr(node[3], 1.5 if kind == "sub" else 1)
        return "(%s)" % s if prec > 1 else s
    if kind == "mul":
        s = _print_expr(node[2], 2) + " * " + _print_expr(node[3], 2)
        return "(%s)" % s if prec > 2 else s
    if kind == "call":
        return "%s(%s)" % (node[2], ", ".join(_print_expr(a) for a in node[3]))
    raise ValueError(kind)


def print_system(sys):
    """Canonical .gal text; parse(print_system(s)) == s."""
    out = ["system %s {" % sys.name]
    if sys.fields:
        out.append("  fields { %s }" % "  ".join("%s: %s" % fk for fk in sys.fields))
    if sys.sources:
        out.append("  sources { %s }" % "  ".join("%s: %s" % fk for fk in sys.sources))
    if sys.params:
        out.append("  params { %s }" % " ".join(sys.params))

    def rep_line(tgt, spec):
        body = ", ".join(("-" if sgn < 0 else "") + n for sgn, n in spec.entries)
        return "  rep %s D(%d,%d,%d) on (%s)" % ((tgt,) + spec.label + (body,))

    for tgt in ("fields", "sources"):
        for spec in sys.rep_specs[tgt]:
            out.append(rep_line(tgt, spec))
    for eq in sys.equations:
        out.append(
            "  eq %s: %s = %s" % (eq.name, _print_expr(eq.lhs_ast), _print_expr(eq.rhs_ast))
        )
    for spec in sys.rep_specs["resid"]:
        out.append(rep_line("resid", spec))
    out.append("}")
    return "\n".join(out) + "\n"
