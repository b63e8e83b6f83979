"""Source specifications: closed-form expressions or snapshot sequences.

The expression language is deliberately small: +, -, *, /, **, parentheses,
the variables t, x, y, z, the constants pi and L (box length), the functions
sin, cos, exp, and pgauss(cx, cy, cz, w) — a periodized product Gaussian.
Trigonometric sources should use box-periodic wavenumbers (2*pi*k/L); the
compatibility checks below measure the constraints numerically either way.

A SourceSpec can be boosted: the boosted spec evaluates the original
expressions at (t, x - v t) with periodic wrapping, which is exact for
box-periodic expressions.
"""

import numpy as np

from ..errors import GalinvError, ParseError, SourceError
from . import spectral, snapshot as snapio


class _ExprParser:
    def __init__(self, text):
        self.text = text
        self.toks = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit() or ch == ".":
                j = i
                while j < len(text) and (text[j].isdigit() or text[j] in ".eE" or
                                         (text[j] in "+-" and text[j - 1] in "eE")):
                    j += 1
                toks.append(("num", float(text[i:j])))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                toks.append(("name", text[i:j]))
                i = j
                continue
            if text[i : i + 2] == "**":
                toks.append(("op", "**"))
                i += 2
                continue
            if ch in "+-*/(),":
                toks.append(("op", ch))
                i += 1
                continue
            raise ParseError("bad character %r in source expression" % ch, 1, i + 1)
        toks.append(("end", None))
        return toks

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            raise ParseError("trailing input in source expression", 1, self.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.next()[1]
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.next()[1]
            node = (op, node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.next()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == ("op", "**"):
            self.next()
            return ("**", node, self.unary())
        return node

    def atom(self):
        kind, val = self.next()
        if kind == "num":
            return ("num", val)
        if kind == "name":
            if self.peek() == ("op", "("):
                self.next()
                args = [self.expr()]
                while self.peek() == ("op", ","):
                    self.next()
                    args.append(self.expr())
                if self.next() != ("op", ")"):
                    raise ParseError("expected ) in source expression", 1, self.pos)
                return ("call", val, args)
            return ("var", val)
        if (kind, val) == ("op", "("):
            node = self.expr()
            if self.next() != ("op", ")"):
                raise ParseError("expected ) in source expression", 1, self.pos)
            return node
        raise ParseError("unexpected token %r" % (val,), 1, self.pos)


def _pgauss(x, c, w, L):
    total = 0.0
    for m in (-1, 0, 1):
        total = total + np.exp(-((x - c + m * L) ** 2) / (w * w))
    return total


def _eval(node, env):
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "var":
        name = node[1]
        if name in env:
            return env[name]
        raise GalinvError("unknown variable %r in source expression" % name)
    if kind == "neg":
        return -_eval(node[1], env)
    if kind in ("+", "-", "*", "/", "**"):
        a = _eval(node[1], env)
        b = _eval(node[2], env)
        if kind == "+":
            return a + b
        if kind == "-":
            return a - b
        if kind == "*":
            return a * b
        if kind == "/":
            return a / b
        return a**b
    if kind == "call":
        fn = node[1]
        args = [_eval(a, env) for a in node[2]]
        if fn == "sin":
            return np.sin(args[0])
        if fn == "cos":
            return np.cos(args[0])
        if fn == "exp":
            return np.exp(args[0])
        if fn == "pgauss":
            cx, cy, cz, w = args
            L = env["L"]
            return (
                _pgauss(env["x"], cx, w, L)
                * _pgauss(env["y"], cy, w, L)
                * _pgauss(env["z"], cz, w, L)
            )
        raise GalinvError("unknown function %r in source expression" % fn)
    raise GalinvError("bad node %r" % (kind,))


class SourceSpec:
    """Named scalar/vector source components over one grid.

    exprs: {"j0": "...", "j": ("...", "...", "...") or "j1": ...}; vectors
    may be given as a 3-tuple under the base name or as name1/name2/name3.
    """

    def __init__(self, grid, exprs, boost=None):
        self.grid = grid
        self.boost = tuple(float(c) for c in (boost or (0.0, 0.0, 0.0)))
        self.asts = {}
        for name, e in exprs.items():
            if isinstance(e, (tuple, list)):
                for i, comp in enumerate(e, 1):
                    self.asts["%s%d" % (name, i)] = _ExprParser(str(comp)).parse()
            else:
                self.asts[name] = _ExprParser(str(e)).parse()

    def _env(self, t):
        g = self.grid
        X, Y, Z = g.X, g.Y, g.Z
        if any(self.boost):
            X = np.mod(X - self.boost[0] * t, g.L)
            Y = np.mod(Y - self.boost[1] * t, g.L)
            Z = np.mod(Z - self.boost[2] * t, g.L)
        return {"t": t, "x": X, "y": Y, "z": Z, "pi": np.pi, "L": g.L}

    def has(self, name):
        return name in self.asts or ("%s1" % name) in self.asts

    def scalar(self, name, t):
        if name not in self.asts:
            return self.grid.zeros()
        out = _eval(self.asts[name], self._env(t))
        return np.broadcast_to(np.asarray(out, dtype=float), self.grid.X.shape).copy()

    def vector(self, name, t):
        env = self._env(t)
        out = []
        for i in (1, 2, 3):
            key = "%s%d" % (name, i)
            if key in self.asts:
                val = _eval(self.asts[key], env)
            else:
                val = 0.0
            out.append(np.broadcast_to(np.asarray(val, dtype=float), self.grid.X.shape).copy())
        return tuple(out)

    def boosted(self, v):
        """Spec evaluating the same expressions at (t, x - v t), wrapped."""
        clone = SourceSpec.__new__(SourceSpec)
        clone.grid = self.grid
        clone.asts = self.asts
        clone.boost = tuple(float(a) + float(b) for a, b in zip(self.boost, v))
        return clone


class SnapshotSource:
    """Source defined by a time-ordered snapshot sequence (linear in time)."""

    def __init__(self, grid, paths):
        self.grid = grid
        self.frames = []
        for p in paths:
            snap = snapio.read_snapshot(p)
            if snap.N != grid.N:
                raise SourceError("snapshot N=%d does not match grid N=%d" % (snap.N, grid.N))
            self.frames.append(snap)
        self.frames.sort(key=lambda s: s.t)
        if not self.frames:
            raise SourceError("empty snapshot sequence")

    def component(self, index, t):
        frames = self.frames
        if t <= frames[0].t:
            return frames[0].data[index]
        if t >= frames[-1].t:
            return frames[-1].data[index]
        for a, b in zip(frames, frames[1:]):
            if a.t <= t <= b.t:
                w = (t - a.t) / (b.t - a.t) if b.t > a.t else 0.0
                return (1 - w) * a.data[index] + w * b.data[index]
        raise SourceError("time %g outside snapshot sequence" % t)


# -- compatibility checks --------------------------------------------------------


def check_magnetic_compat(spec, grid, times, tol=1e-8):
    """Magnetic limit needs div j == 0 (the curl equation forces it)."""
    for t in times:
        j = spec.vector("j", t)
        scale = max(1.0, spectral.inf_norm(j))
        bad = spectral.inf_norm(spectral.div(j, grid))
        if bad > tol * scale:
            raise SourceError("div j = %g at t=%g; magnetic sources must be solenoidal" % (bad, t))


def check_continuity_compat(spec, grid, times, dt=None, name4="j4", tol=1e-6):
    """Electric/extended limits need dt j4 == div j (five-current continuity).

    The time derivative is probed with a small independent step, so the check
    tolerance does not depend on the run's dt.
    """
    probe = 1e-4
    for t in times:
        j = spec.vector("j", t)
        dj4 = (spec.scalar(name4, t + probe) - spec.scalar(name4, t - probe)) / (2 * probe)
        scale = max(1.0, spectral.inf_norm(j), spectral.inf_norm(dj4))
        bad = spectral.inf_norm(dj4 - spectral.div(j, grid))
        if bad > tol * scale:
            raise SourceError(
                "dt j4 - div j = %g at t=%g; five-current continuity fails" % (bad, t)
            )


class _TransformedSources:
    """Boosted-frame source wrapper built from exact component rules."""

    def __init__(self, base, rules):
        self.grid = base.grid
        self.base = base
        self.rules = rules

    def has(self, name):
        return self.base.has(name)

    def scalar(self, name, t):
        return self.rules[name](self.base, t)

    def vector(self, name, t):
        return self.rules[name](self.base, t)


def boosted_magnetic(spec, v):
    """Magnetic-limit frame change: j' = j o sigma, j0' = (j0 - v.j) o sigma."""
    moved = spec.boosted(v)

    def j0(base, t):
        j = moved.vector("j", t)
        return moved.scalar("j0", t) - sum(vv * c for vv, c in zip(v, j))

    return _TransformedSources(moved, {"j0": j0, "j": lambda b, t: moved.vector("j", t)})


def boosted_electric(spec, v):
    """Electric-limit frame change: j4' = j4 o sigma, j' = (j - v j4) o sigma."""
    moved = spec.boosted(v)

    def j(base, t):
        j4 = moved.scalar("j4", t)
        return tuple(c - vv * j4 for c, vv in zip(moved.vector("j", t), v))

    return _TransformedSources(moved, {"j4": lambda b, t: moved.scalar("j4", t), "j": j})
