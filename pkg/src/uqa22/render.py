"""Text and LaTeX emitters.

The LaTeX side mirrors the notation the formulas are usually displayed
in: blocks come out as ratios of binomials in z_j/z_i, weight functions
as sums of tau * S-product * F-product terms, and mode expressions as
sums of f_k words with Laurent-monomial coefficients.
"""

from __future__ import annotations

from .ncalg import AbstractSymbol, ModeSymbol, NCExpr
from .projection import PLUS, weight_structure
from .qfield import QPoly, QRat
from .series import ExpansionSeries, FactoredRational


def latex_qpoly(p: QPoly) -> str:
    # display order is highest power first, unlike the canonical text form
    if p.is_zero():
        return "0"
    bits = []
    for e, c in reversed(list(p.terms())):
        if e == 0:
            t = _frac_str(c)
        else:
            qe = "q" if e == 1 else f"q^{{{e}}}"
            if c == 1:
                t = qe
            elif c == -1:
                t = f"-{qe}"
            else:
                t = f"{_frac_str(c)}{qe}"
        bits.append(t)
    out = bits[0]
    for t in bits[1:]:
        out += t if t.startswith("-") else f"+{t}"
    return out


def _frac_str(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\tfrac{{{c.numerator}}}{{{c.denominator}}}"


def latex_qrat(x: QRat, wrap_sum: bool = False) -> str:
    num = latex_qpoly(x.num)
    if x.den.is_one():
        if wrap_sum and len(x.num.coeffs) > 1:
            return f"\\left({num}\\right)"
        return num
    return f"\\frac{{{num}}}{{{latex_qpoly(x.den)}}}"


def _latex_atom(u: QRat, i: int, v: QRat, j: int) -> str:
    """One binomial in ratio form, u + v * z_j/z_i."""
    left = latex_qpoly(u.num) if u.den.is_one() else latex_qrat(u)
    right = latex_qpoly(v.num) if v.den.is_one() else latex_qrat(v)
    if right == "1":
        right = ""
    elif right == "-1":
        right = "-"
    ratio = f"z_{{{j}}}/z_{{{i}}}"
    sep = "" if right.startswith("-") else "+"
    return f"{left}{sep}{right}{ratio}"


def latex_ratio(fr: FactoredRational) -> str:
    """Ratio-form display of a factored rational function."""
    if fr.is_zero():
        return "0"
    scalar = fr.scalar
    mono = list(fr.monomial)
    num_atoms, den_atoms = [], []
    for u, i, v, j, m in fr.factors:
        # pull z_i^m out of the binomial so the atom is a pure ratio
        mono[i - 1] += m
        lead = u.as_monomial()
        if lead is not None and lead[1] < 0:
            u, v = -u, -v
            scalar = scalar * QRat.of(-1) ** m
        atom = _latex_atom(u, i, v, j)
        if m > 0:
            num_atoms += [f"({atom})"] * m
        else:
            den_atoms += [f"({atom})"] * (-m)
    for i, e in enumerate(mono):
        if e > 0:
            num_atoms.insert(0, f"z_{{{i+1}}}" + (f"^{{{e}}}" if e > 1 else ""))
        elif e < 0:
            den_atoms.insert(0, f"z_{{{i+1}}}" + (f"^{{{-e}}}" if e < -1 else ""))
    num = "".join(num_atoms) or "1"
    den = "".join(den_atoms)
    sign = ""
    if scalar == QRat.of(-1):
        sign, scalar = "-", QRat.of(1)
    pref = "" if scalar.is_one() else latex_qrat(scalar, wrap_sum=True)
    if den:
        return f"{sign}{pref}\\frac{{{num}}}{{{den}}}"
    body = num if num != "1" or not pref else ""
    return f"{sign}{pref}{body}" or "1"


def latex_symbol(sym) -> str:
    if isinstance(sym, ModeSymbol):
        return f"{sym.family}_{{{sym.index}}}"
    var = f"z_{{{sym.var}}}"
    if isinstance(sym, AbstractSymbol):
        kind = sym.kind
        if kind == "f+":
            return f"P\\big(f({var})\\big)"
        if kind == "s+":
            arg = f"-q{var}" if sym.twisted else var
            return f"P\\big(s({arg})\\big)"
        if kind == "f-":
            return f"P^-\\big(f({var})\\big)"
        if kind == "s~-":
            arg = f"-q^{{-1}}{var}" if sym.twisted else var
            return f"P^-\\big(\\tilde s({arg})\\big)"
    raise ValueError(f"cannot render {sym!r}")


def latex_series(s: ExpansionSeries) -> str:
    if not s.terms:
        return "0"
    bits = []
    for a, c in s.sorted_terms():
        mono = "".join(
            f"z_{{{i+1}}}" + (f"^{{{e}}}" if e != 1 else "")
            for i, e in enumerate(a) if e
        )
        coeff = latex_qrat(c, wrap_sum=bool(mono))
        if mono:
            bits.append(f"{coeff}{mono}" if coeff not in ("1",) else mono)
        else:
            bits.append(coeff)
    out = bits[0]
    for t in bits[1:]:
        out += t if t.startswith("-") else f"+{t}"
    return out


def latex_ncexpr(x: NCExpr) -> str:
    if not x.coeffs:
        return "0"
    bits = []
    for w in x.words():
        word = "".join(latex_symbol(s) for s in w) or "1"
        series = latex_series(x.coeffs[w])
        if series == "1":
            bits.append(word)
        else:
            bits.append(f"\\left({series}\\right){word}")
    return " + ".join(bits)


def _latex_block_sum(kind: str, row, target, n, orientation) -> str:
    """F or S factor written out as its defining combination."""
    from . import blocks as B
    args = B.ArgList(tuple(row), target)
    plus = orientation == PLUS
    if kind == "F":
        sym = "P\\big(f(z_{%d})\\big)" % target if plus \
            else "P^-\\big(f(z_{%d})\\big)" % target
        build = B.build_block if plus else B.build_tilde_block
        parts = [sym]
        for k in row:
            parts.append(
                f"-{latex_ratio(build('rho', args, k, n))}"
                + (f"P\\big(f(z_{{{k}}})\\big)" if plus
                   else f"P^-\\big(f(z_{{{k}}})\\big)"))
        return "".join(parts)
    build = B.build_block if plus else B.build_tilde_block
    if plus:
        parts = [f"P\\big(s(z_{{{target}}})\\big)"]
        twist = "-q"
    else:
        parts = [f"P^-\\big(\\tilde s(z_{{{target}}})\\big)"]
        twist = "-q^{-1}"
    for k in row:
        parts.append(f"-{latex_ratio(build('mu', args, k, n))}"
                     + ("P\\big(s(z_{%d})\\big)" % k if plus
                        else "P^-\\big(\\tilde s(z_{%d})\\big)" % k))
    for k in row:
        parts.append(f"-{latex_ratio(build('nu', args, k, n))}"
                     + ("P\\big(s(%sz_{%d})\\big)" % (twist, k) if plus
                        else "P^-\\big(\\tilde s(%sz_{%d})\\big)" % (twist, k)))
    return "".join(parts)


def latex_weight(n: int, orientation: str) -> str:
    """The closed formula with every block written out, unexpanded."""
    terms = []
    for term in weight_structure(n, orientation):
        bits = []
        for fr in term.tau:
            bits.append(latex_ratio(fr))
        factors = []
        if orientation == PLUS:
            for row, t in term.s_rows:
                factors.append(_latex_block_sum("S", row, t, n, orientation))
            for row, t in term.f_rows:
                factors.append(_latex_block_sum("F", row, t, n, orientation))
        else:
            for row, t in term.f_rows:
                factors.append(_latex_block_sum("F", row, t, n, orientation))
            for row, t in term.s_rows:
                factors.append(_latex_block_sum("S", row, t, n, orientation))
        for f in factors:
            bits.append(f"\\left({f}\\right)")
        terms.append("\\,".join(bits) if bits else "1")
    proj = "P" if orientation == PLUS else "P^-"
    currents = "".join(f"f(z_{{{k}}})" for k in range(1, n + 1))
    lhs = f"{proj}\\big({currents}\\big)"
    return f"{lhs} = " + " + ".join(terms)


def latex_weight_summary(n: int, orientation: str) -> str:
    """The closed formula in compact notation: decorated tau symbols and
    F/S factors shown with their argument rows."""
    plus = orientation == PLUS

    def args(row, target):
        inner = ",".join(f"z_{{{x}}}" for x in row)
        if not inner:
            return f"(z_{{{target}}})"
        if plus:
            return f"({inner};z_{{{target}}})"
        return f"(z_{{{target}}};{inner})"

    terms = []
    for term in weight_structure(n, orientation):
        pair = term.pair
        deco = ("_{\\{%s\\},\\{%s\\}}"
                % (",".join(map(str, pair.I)), ",".join(map(str, pair.J))))
        bits = []
        for k in range(1, pair.r + 1):
            head = "\\tau" if plus else "\\tilde\\tau"
            bits.append(f"{head}^{{{k}}}{deco}")
        s_name = "\\mathcal{S}" if plus else "\\tilde{\\mathcal{S}}"
        f_name = "\\mathcal{F}" if plus else "\\tilde{\\mathcal{F}}"
        s_bits = [f"{s_name}{args(row, t)}" for row, t in term.s_rows]
        f_bits = [f"{f_name}{args(row, t)}" for row, t in term.f_rows]
        bits += s_bits + f_bits if plus else f_bits + s_bits
        terms.append("\\,".join(bits) if bits else "1")
    proj = "P" if plus else "P^-"
    currents = "".join(f"f(z_{{{k}}})" for k in range(1, n + 1))
    return f"{proj}\\big({currents}\\big) = " + " + ".join(terms)


def text_weight_expr(expr: NCExpr) -> str:
    return str(expr)
