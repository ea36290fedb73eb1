"""One-shot property report for a truth table."""

from __future__ import annotations

from dataclasses import dataclass

from boolfn.core import TruthTable, degree, format_anf
from boolfn.immunity import ImmunityResult, algebraic_immunity, fast_algebraic_immunity
from boolfn.spectra import (
    DyadicRational,
    almost_optimal_lb,
    divisibility_check,
    divisibility_exponent,
    is_bent,
    linear_bias,
    nonlinearity,
    resiliency_order,
    walsh_transform,
)


@dataclass(frozen=True)
class PropertyReport:
    n: int
    weight: int
    balanced: bool
    nonlinearity: int
    linear_bias: DyadicRational
    resiliency_order: int
    degree: int
    bent: bool
    almost_optimal_lb: bool
    ai: ImmunityResult | None = None
    fai: int | None = None
    # 2-adic exponent every Walsh value must carry for an m-resilient
    # function of this degree; None when the check does not apply
    divisibility_exponent_checked: int | None = None
    divisibility_ok: bool | None = None

    def lines(self) -> list[str]:
        out = [
            f"n = {self.n}",
            f"weight = {self.weight}",
            f"balanced = {_b(self.balanced)}",
            f"nonlinearity = {self.nonlinearity}",
            f"linear_bias = {self.linear_bias}",
            f"resiliency_order = {self.resiliency_order}",
            f"degree = {self.degree}",
            f"bent = {_b(self.bent)}",
            f"almost_optimal_lb = {_b(self.almost_optimal_lb)}",
        ]
        if self.ai is not None:
            out.append(f"ai = {self.ai.value}")
            out.append(f"ai_exact = {_b(self.ai.exact)}")
            if self.ai.witness is not None:
                w = self.ai.witness
                out.append(f"ai_witness_side = {w.side}")
                out.append(f"ai_witness = {format_anf(w.g)}")
        if self.fai is not None:
            out.append(f"fai = {self.fai}")
        ex = self.divisibility_exponent_checked
        out.append(f"divisibility_exponent_checked = {'none' if ex is None else ex}")
        if self.divisibility_ok is not None:
            out.append(f"divisibility_ok = {_b(self.divisibility_ok)}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _b(v: bool) -> str:
    return "true" if v else "false"


def analyze(
    f: TruthTable, ai: bool = False, ai_cap: int | None = None, fai: bool = False
) -> PropertyReport:
    s = walsh_transform(f)
    res = resiliency_order(s)
    deg = degree(f)
    div_e = div_ok = None
    if 0 <= res <= f.n - 2 and deg >= 1:
        div_e = divisibility_exponent(f.n, res, deg)
        div_ok = divisibility_check(s, res, deg)
    return PropertyReport(
        n=f.n,
        weight=f.weight(),
        balanced=f.is_balanced(),
        nonlinearity=nonlinearity(s),
        linear_bias=linear_bias(s),
        resiliency_order=res,
        degree=deg,
        bent=is_bent(s),
        almost_optimal_lb=almost_optimal_lb(s),
        ai=algebraic_immunity(f, ai_cap) if (ai or ai_cap is not None) else None,
        fai=fast_algebraic_immunity(f) if fai else None,
        divisibility_exponent_checked=div_e,
        divisibility_ok=div_ok,
    )
