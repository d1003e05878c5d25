"""Plain-text notation for q,t polynomials and Schur expansions.

Polynomials are written like ``q^2+qt-2t^3`` or ``q^{-5/2}``; Schur
expansions like ``s_{11} + (q+t)s_2``.  Parts of size 10 or more need
commas inside the braces (``s_{10,1}``), except for a lone part (``s_{10}``).
"""

import re
from fractions import Fraction

from .exactcoef import LaurentQT, RatQT
from .symfunc import DEFAULT, SymF


class NotationError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__("%s at position %d in %r" % (msg, pos, text))
        self.pos = pos


_VAR = re.compile(r"([qt])(?:\^(?:\{(-?\d+)(/2)?\}|(\d+)))?")
_COEF = re.compile(r"\d+")


def _exp(m):
    if m.group(2) is not None:
        v = int(m.group(2))
        return v if m.group(3) else 2 * v
    return 2 * int(m.group(4)) if m.group(4) else 2


def parse_qt(text):
    """A LaurentQT from text; exponents are stored doubled internally."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise NotationError("empty polynomial", text, 0)
    terms = {}
    pos = 0
    while pos < len(s):
        start = pos
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos:
            raise NotationError("expected + or -", text, pos)
        m = _COEF.match(s, pos)
        coef = 1
        if m:
            coef = int(m.group())
            pos = m.end()
        e = [0, 0]
        seen = bool(m)
        while pos < len(s) and s[pos] in "qt":
            v = _VAR.match(s, pos)
            e["qt".index(v.group(1))] += _exp(v)
            pos = v.end()
            seen = True
        if not seen:
            raise NotationError("expected a monomial", text, start)
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sign * coef
    return LaurentQT({k: v for k, v in terms.items() if v})


def _label(lam):
    if any(p >= 10 for p in lam):
        body = ",".join(map(str, lam))
        return "s_{%s}" % body
    body = "".join(map(str, lam))
    return "s_%s" % body if len(body) == 1 else "s_{%s}" % body


def _parts(body, text, pos):
    if "," in body:
        parts = [int(x) for x in body.split(",")]
    elif "0" in body and len(body) > 1:
        parts = [int(body)]
    else:
        parts = [int(x) for x in body]
    if any(p <= 0 for p in parts) or parts != sorted(parts, reverse=True):
        raise NotationError("bad partition %r" % body, text, pos)
    return tuple(parts)


_SLABEL = re.compile(r"s_(?:\{([\d,]+)\}|(\d))")


def parse_schur(text, ring=DEFAULT):
    """A SymF in the Schur basis from text like ``s_{11} + (q+t)s_2``."""
    s = text.replace(" ", "").replace("*", "")
    terms = {}
    pos = 0
    if not s:
        raise NotationError("empty expression", text, 0)
    while pos < len(s):
        start = pos
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif pos:
            raise NotationError("expected + or -", text, pos)
        if pos < len(s) and s[pos] == "(":
            depth, j = 0, pos
            while j < len(s):
                depth += {"(": 1, ")": -1}.get(s[j], 0)
                if depth == 0:
                    break
                j += 1
            if depth:
                raise NotationError("unbalanced parenthesis", text, pos)
            coef = parse_qt(s[pos + 1:j])
            pos = j + 1
        else:
            j = s.find("s_", pos)
            if j < 0:
                raise NotationError("missing Schur function", text, pos)
            coef = parse_qt(s[pos:j]) if j > pos else LaurentQT.const(1)
            pos = j
        m = _SLABEL.match(s, pos)
        if not m:
            raise NotationError("expected s_<partition>", text, pos)
        lam = _parts(m.group(1) or m.group(2), text, pos)
        pos = m.end()
        c = coef * sign
        terms[lam] = terms[lam] + c if lam in terms else c
        if not terms[lam]:
            del terms[lam]
        if pos == start:
            raise NotationError("no progress", text, pos)
    return SymF(ring, "s", terms)


def _mono(eq, et):
    out = ""
    for v, e in (("q", eq), ("t", et)):
        if e == 0:
            continue
        if e == 2:
            out += v
        elif e % 2:
            out += "%s^{%d/2}" % (v, e)
        elif e > 0:
            out += "%s^%d" % (v, e // 2) if e < 20 else "%s^{%d}" % (v, e // 2)
        else:
            out += "%s^{%d}" % (v, e // 2)
    return out


def format_qt(c):
    """Text for a LaurentQT (or int) in the style q+t-qt."""
    if isinstance(c, int):
        c = LaurentQT.const(c)
    if isinstance(c, RatQT):
        if c.is_polynomial():
            c = c.to_poly()
        else:
            den = " ".join("(%s)^%d" % (format_qt(g), k) if k > 1 else "(%s)" % format_qt(g)
                           for g, k in sorted(c.den.items(), key=lambda x: str(x[0])))
            return "(%s)/%s" % (format_qt(c.num), den)
    if not c:
        return "0"
    # positive terms first, each group by decreasing degree
    keys = sorted(c.terms, key=lambda k: (c.terms[k] < 0, -(k[0] + k[1]), -k[0]))
    out = []
    for k in keys:
        v = c.terms[k]
        if isinstance(v, Fraction) and v.denominator == 1:
            v = int(v)
        mono = _mono(*k)
        if not mono:
            body = str(abs(v))
        elif abs(v) == 1:
            body = mono
        else:
            body = "%s%s" % (abs(v), mono)
        sign = "-" if v < 0 else "+"
        out.append(("-" if v < 0 else "") + body if not out else sign + body)
    return "".join(out)


def format_schur(F):
    """Text for a SymF, Schur terms sorted by partition."""
    F = F.convert("s") if F.basis != "s" else F
    if not F.terms:
        return "0"
    out = []
    for lam in sorted(F.terms):
        c = F.terms[lam]
        txt = format_qt(c)
        lab = _label(lam) if lam else "1"
        if txt == "1":
            piece, neg = lab, False
        elif txt == "-1":
            piece, neg = lab, True
        elif isinstance(c, LaurentQT) and len(c.terms) == 1:
            neg = txt.startswith("-")
            piece = txt.lstrip("-") + lab
        else:
            piece, neg = "(%s)%s" % (txt, lab), False
        if not out:
            out.append(("-" if neg else "") + piece)
        else:
            out.append(("- " if neg else "+ ") + piece)
    return " ".join(out)
