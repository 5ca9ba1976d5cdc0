"""Model specification strings.

Grammar (colon-separated, parsed left to right)::

    uniform | maxmax | maxmin | mmr | welfare | fair
    soft:<elementary>:<precision>
    qbr:<model>:<lambda>          quantal best response to <model>
    br:<model>                    exact best response to <model>
    lk:<model>:<D>                level-k prediction, level 0 = <model>
    ch:<model>:<D>                cognitive hierarchy prediction
    qlk:<model>:<D>:<lambdas>     quantal level-k
    qch:<model>:<D>:<lambdas>     quantal cognitive hierarchy
    qre:<lambda>
    mix:<w1>*<elementary>+<w2>*<elementary>+...

``<D>`` is a comma-separated distribution over levels 0..K, optionally
followed by ``@k`` to select the behavior of level-k agents instead of the
population mixture, e.g. ``qch:uniform:0.4,0.3,0.3@2:1``.  ``<lambdas>`` is
one precision or one per level 1..K.  ``mix`` consumes the rest of the
string, so it can only appear last.
"""

from __future__ import annotations

from .aggregate import AggregatedModel
from .elementary import BUILTINS, ElementaryModel, make_soft_variant
from .strategic import IterativeModel, QreModel, QuantalResponseModel


class ModelSpecError(ValueError):
    pass


def parse_model(spec: str):
    tokens = spec.strip().split(":")
    model, rest = _parse(tokens, spec)
    if rest:
        raise ModelSpecError(f"trailing tokens {':'.join(rest)!r} in model spec {spec!r}")
    return model


def _number(tok: str, spec: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ModelSpecError(f"expected a number, got {tok!r} in {spec!r}") from None


def _numbers(tok: str, spec: str) -> list[float]:
    return [_number(t, spec) for t in tok.split(",")]


def _take(tokens, spec):
    if not tokens:
        raise ModelSpecError(f"model spec {spec!r} ended early")
    return tokens[0], tokens[1:]


def _parse(tokens, spec):
    head, rest = _take(tokens, spec)
    if head in BUILTINS:
        return BUILTINS[head](), rest
    if head == "soft":
        base, rest = _parse(rest, spec)
        if not isinstance(base, ElementaryModel):
            raise ModelSpecError("soft: needs an elementary base model")
        tok, rest = _take(rest, spec)
        return make_soft_variant(base, _number(tok, spec)), rest
    if head == "qbr":
        base, rest = _parse(rest, spec)
        tok, rest = _take(rest, spec)
        return QuantalResponseModel(base, _number(tok, spec)), rest
    if head == "br":
        base, rest = _parse(rest, spec)
        return QuantalResponseModel(base, None), rest
    if head in ("lk", "ch", "qlk", "qch"):
        base, rest = _parse(rest, spec)
        tok, rest = _take(rest, spec)
        weights, _, level = tok.partition("@")
        level = int(level) if level else None
        lambdas = None
        if head.startswith("q"):
            lam_tok, rest = _take(rest, spec)
            lambdas = _numbers(lam_tok, spec)
        return IterativeModel(base, _numbers(weights, spec), head.lstrip("q"), lambdas,
                              level), rest
    if head == "qre":
        tok, rest = _take(rest, spec)
        return QreModel(_number(tok, spec)), rest
    if head == "mix":
        body = ":".join(rest)
        comps, weights = [], []
        for term in body.split("+"):
            w, star, sub = term.partition("*")
            if not star:
                raise ModelSpecError(f"mix term {term!r} must look like <weight>*<model>")
            m = parse_model(sub)
            if not isinstance(m, ElementaryModel):
                raise ModelSpecError(f"mix components must be elementary, got {sub!r}")
            comps.append(m)
            weights.append(_number(w, spec))
        return AggregatedModel(tuple(comps), tuple(weights)), []
    raise ModelSpecError(f"unknown model {head!r} in {spec!r}")
