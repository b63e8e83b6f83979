"""First-order PDE systems as typed field/source declarations plus equations.

Equations are stored in two synchronized forms: the surface syntax tree (for
printing) and a canonical "jet polynomial" per scalar component — an exact
polynomial in the parameters and in first-derivative symbols comp|d with
d in (value, t, x, y, z).  Structural equality compares the jet form, so any
two texts denoting the same system compare equal.

Transformation data: each system declares how its fields, sources and
residuals sit inside catalog multiplets via rep specs (rep label plus signed
slot assignment).  The boost/rotation action on raw components is then
T^T Lambda(g) T with T the signed slot-assignment matrix.
"""

from gmpy2 import mpq

from ..errors import GalinvError, LayoutMismatch
from ..exact.matrix import Matrix, QQ, mat_mul
from ..exact.multipoly import MultiPoly
from ..reps.catalog import build_galilei_rep

DERIVS = ("_", "t", "x", "y", "z")


def comp_names(name, kind):
    if kind == "scalar":
        return [name]
    return [name + str(i) for i in (1, 2, 3)]


class RepSpec:
    """Catalog label plus signed assignment of rep slots to named targets."""

    def __init__(self, label, entries):
        self.label = tuple(label)
        self.rep = build_galilei_rep(self.label)
        entries = [(int(s), str(n)) for s, n in entries]
        if len(entries) != len(self.rep.layout.slots):
            raise LayoutMismatch(
                "rep %s has %d slots, assignment lists %d"
                % (self.rep.name, len(self.rep.layout.slots), len(entries))
            )
        self.entries = entries

    def __eq__(self, other):
        return (
            isinstance(other, RepSpec)
            and self.label == other.label
            and self.entries == other.entries
        )

    def __repr__(self):
        body = ", ".join(("-" if s < 0 else "") + n for s, n in self.entries)
        return "RepSpec(%s on (%s))" % (self.rep.name, body)


class Equation:
    __slots__ = ("name", "kind", "polys", "lhs_ast", "rhs_ast")

    def __init__(self, name, kind, polys, lhs_ast=None, rhs_ast=None):
        self.name = name
        self.kind = kind
        self.polys = tuple(polys)
        self.lhs_ast = lhs_ast
        self.rhs_ast = rhs_ast

    def __eq__(self, other):
        return (
            isinstance(other, Equation)
            and self.name == other.name
            and self.kind == other.kind
            and self.polys == other.polys
        )


class FieldSystem:
    def __init__(self, name, fields, sources, params, equations, rep_specs=None, metadata=None):
        self.name = name
        self.fields = [(n, k) for n, k in fields]
        self.sources = [(n, k) for n, k in sources]
        self.params = list(params)
        self.equations = list(equations)
        self.rep_specs = {"fields": [], "sources": [], "resid": []}
        if rep_specs:
            for key in self.rep_specs:
                self.rep_specs[key] = list(rep_specs.get(key, []))
        self.metadata = dict(metadata or {})
        self._index_components()

    # -- component bookkeeping --------------------------------------------
    def _index_components(self):
        self.field_comps = []
        for n, k in self.fields:
            self.field_comps.extend(comp_names(n, k))
        self.source_comps = []
        for n, k in self.sources:
            self.source_comps.extend(comp_names(n, k))
        self.all_comps = self.field_comps + self.source_comps
        self.jet_vars = tuple(self.params) + tuple(
            "%s|%s" % (c, d) for c in self.all_comps for d in DERIVS
        )
        self._jet_index = {v: i for i, v in enumerate(self.jet_vars)}

    def jet_var(self, comp, d="_"):
        return MultiPoly.var(self.jet_vars, "%s|%s" % (comp, d))

    def param_var(self, name):
        return MultiPoly.var(self.jet_vars, name)

    def kind_of(self, name):
        for n, k in self.fields + self.sources:
            if n == name:
                return k
        return None

    def is_source(self, name):
        return any(n == name for n, _ in self.sources)

    def equation(self, name):
        for eq in self.equations:
            if eq.name == name:
                return eq
        raise KeyError(name)

    def eq_comp_names(self):
        out = []
        for eq in self.equations:
            out.extend(comp_names(eq.name, eq.kind))
        return out

    # -- transformation machinery -------------------------------------------
    def _assignment_matrix(self, specs, names, kinds):
        """Signed permutation T: component vector -> stacked canonical coords."""
        widths = {n: (3 if k == "vector" else 1) for n, k in zip(names, kinds)}
        offsets = {}
        pos = 0
        for n in names:
            offsets[n] = pos
            pos += widths[n]
        total = pos
        rows = []
        used = set()
        for spec in specs:
            for (sign, target), slot in zip(spec.entries, spec.rep.layout.slots):
                if target not in offsets:
                    raise LayoutMismatch("rep slot assigned to unknown name %r" % target)
                w = 3 if slot.kind == "vector" else 1
                if widths[target] != w:
                    raise LayoutMismatch(
                        "slot %s (%s) assigned to %r of different kind" % (slot.name, slot.kind, target)
                    )
                if target in used:
                    raise LayoutMismatch("component %r assigned twice" % target)
                used.add(target)
                for i in range(w):
                    row = [mpq(0)] * total
                    row[offsets[target] + i] = mpq(sign)
                    rows.append(row)
        if len(rows) != total or used != set(names):
            raise LayoutMismatch(
                "rep specs must cover every component exactly once (%d of %d)"
                % (len(rows), total)
            )
        return Matrix(QQ, rows)

    def transform_matrix(self, which, motion):
        """Exact component-mixing matrix M(g) for fields/sources/residuals."""
        if which == "fields":
            names = [n for n, _ in self.fields]
            kinds = [k for _, k in self.fields]
        elif which == "sources":
            names = [n for n, _ in self.sources]
            kinds = [k for _, k in self.sources]
        elif which == "resid":
            names = [eq.name for eq in self.equations]
            kinds = [eq.kind for eq in self.equations]
        else:
            raise KeyError(which)
        specs = self.rep_specs[which]
        if not specs:
            if not names:
                return None
            raise GalinvError("system %r declares no %s rep spec" % (self.name, which))
        T = self._assignment_matrix(specs, names, kinds)
        blocks = [
            mat_mul(s.rep.boost_matrix(motion.v), s.rep.rotation_block(motion.rot))
            for s in specs
        ]
        lam = Matrix.block_diag(QQ, blocks)
        return mat_mul(mat_mul(T.transpose(), lam), T)

    # -- equality and inspection ---------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, FieldSystem)
            and self.name == other.name
            and self.fields == other.fields
            and self.sources == other.sources
            and self.params == other.params
            and self.equations == other.equations
            and self.rep_specs == other.rep_specs
        )

    def __repr__(self):
        return "FieldSystem(%s: %d fields, %d sources, %d equations)" % (
            self.name,
            len(self.fields),
            len(self.sources),
            len(self.equations),
        )

    def evaluate_residuals(self, values, params=None):
        """Exact residuals on concrete spacetime polynomials.

        values: {component name: MultiPoly over (t,x,y,z)} for every scalar
        component of fields and sources; params: {name: rational}.
        Returns {equation name: poly or 3-tuple}.
        """
        from ..fields.calculus import SPACETIME

        params = {k: mpq(v) for k, v in (params or {}).items()}
        nparams = len(self.params)
        njet = len(DERIVS)

        def jet_value(i):
            rel = i - nparams
            comp = self.all_comps[rel // njet]
            d = DERIVS[rel % njet]
            base = values[comp]
            return base if d == "_" else base.diff(d)

        cache = {}
        out = {}
        for eq in self.equations:
            polys = []
            for p in eq.polys:
                total = MultiPoly.zero(SPACETIME)
                for exp, coef in p.terms.items():
                    c = mpq(coef)
                    for i in range(nparams):
                        if exp[i]:
                            c *= params.get(self.params[i], mpq(0)) ** exp[i]
                    if c == 0:
                        continue
                    term = MultiPoly.const(SPACETIME, c)
                    for i in range(nparams, len(exp)):
                        for _ in range(exp[i]):
                            if i not in cache:
                                cache[i] = jet_value(i)
                            term = term * cache[i]
                    total = total + term
                polys.append(total)
            out[eq.name] = polys[0] if eq.kind == "scalar" else tuple(polys)
        return out

    def max_field_degree(self):
        nparams = len(self.params)
        deg = 0
        for eq in self.equations:
            for p in eq.polys:
                for exp in p.terms:
                    deg = max(deg, sum(exp[nparams:]))
        return deg

    def is_linear(self):
        return self.max_field_degree() <= 1
