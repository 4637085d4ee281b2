"""Permutations of {0..n-1} as tuples, plus cycle-notation parsing."""

import re

from .errors import InvalidPermutation, ParseError


def identity(degree):
    return tuple(range(degree))


def is_perm(p, degree):
    return len(p) == degree and sorted(p) == list(range(degree))


def check_perm(p, degree):
    if not is_perm(tuple(p), degree):
        raise InvalidPermutation(f"not a permutation of 0..{degree - 1}: {p!r}")
    return tuple(p)


def compose(p, q):
    """(p*q)[i] = p[q[i]]: apply q first, then p."""
    return tuple(p[j] for j in q)


def inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycles(p, fixpoints=False):
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = p[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = p[cur]
        if len(cyc) > 1 or fixpoints:
            out.append(tuple(cyc))
    return tuple(out)


def from_cycles(cycs, degree):
    out = list(range(degree))
    touched = set()
    for cyc in cycs:
        for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
            if not (0 <= a < degree):
                raise InvalidPermutation(f"point {a} out of range for degree {degree}")
            if a in touched:
                raise InvalidPermutation(f"point {a} appears in two cycles")
            touched.add(a)
            out[a] = b
    return tuple(out)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Parse cycle notation like "(0 1)(2 3)"; "()" or "" is the identity."""
    text = text.strip()
    if text in ("", "()"):
        return identity(degree)
    if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
        raise ParseError(f"bad cycle notation: {text!r}")
    cycs = []
    for body in _CYCLE_RE.findall(text):
        body = body.replace(",", " ").strip()
        if not body:
            continue
        try:
            pts = tuple(int(tok) for tok in body.split())
        except ValueError:
            raise ParseError(f"bad cycle notation: {text!r}") from None
        cycs.append(pts)
    return from_cycles(tuple(cycs), degree)


def format_cycles(p):
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(i) for i in cyc) + ")" for cyc in cycs)


def perm_order(p):
    n = 1
    q = p
    ident = identity(len(p))
    while q != ident:
        q = compose(q, p)
        n += 1
    return n
