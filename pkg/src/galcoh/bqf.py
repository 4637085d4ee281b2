"""Reduced binary quadratic forms of fundamental discriminant.

Used as the independent class-number oracle: definite reduced forms are
counted directly, indefinite ones are partitioned into reduction cycles.
For a fundamental discriminant every form is automatically primitive.
"""

from math import isqrt


def reduced_imaginary_forms(disc):
    """All reduced forms (a, b, c) of discriminant disc < 0."""
    assert disc < 0 and disc % 4 in (0, 1)
    forms = []
    amax = isqrt(-disc // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            assert b * b - 4 * a * c == disc
            forms.append((a, b, c))
    return forms


def reduced_indefinite_forms(disc):
    """All reduced forms (a, b, c) of nonsquare discriminant disc > 0.

    Reduced means |sqrt(disc) - 2|a|| < b < sqrt(disc), encoded with exact
    integer comparisons.
    """
    assert disc > 0 and disc % 4 in (0, 1)
    s = isqrt(disc)
    assert s * s != disc, "square discriminant"
    forms = []
    for b in range(1, s + 1):
        if (b - disc) % 2:
            continue
        prod4 = b * b - disc  # = 4ac < 0
        if prod4 % 4:
            continue
        prod = prod4 // 4
        for a in _divisor_range(-prod):
            for aa in (a, -a):
                c = prod // aa
                if _is_reduced_indefinite(aa, b, c, disc, s):
                    forms.append((aa, b, c))
    return sorted(set(forms))


def _divisor_range(n):
    out = []
    for a in range(1, isqrt(n) + 1):
        if n % a == 0:
            out.append(a)
            if a != n // a:
                out.append(n // a)
    return sorted(out)


def _is_reduced_indefinite(a, b, c, disc, s):
    # 0 < b < sqrt(disc), exactly
    if b <= 0 or b * b >= disc:
        return False
    t = 2 * abs(a) - b
    # |sqrt(disc) - 2|a|| < b  <=>  (t < 0 or t^2 < disc) and disc < (2|a|+b)^2
    if t >= 0 and t * t >= disc:
        return False
    u = 2 * abs(a) + b
    if u * u <= disc:
        return False
    return b * b - 4 * a * c == disc


def rho_step(form, disc):
    """One reduction step (a,b,c) -> (c, b', c') on indefinite forms."""
    a, b, c = form
    s = isqrt(disc)
    two_c = 2 * abs(c)
    bp = s - ((s + b) % two_c)
    cp = (bp * bp - disc) // (4 * c)
    assert bp * bp - 4 * c * cp == disc
    return (c, bp, cp)


def indefinite_cycles(disc):
    """Partition of the reduced indefinite forms into reduction cycles."""
    forms = reduced_indefinite_forms(disc)
    form_set = set(forms)
    remaining = set(forms)
    cycles = []
    for f in forms:
        if f not in remaining:
            continue
        cyc = [f]
        cur = rho_step(f, disc)
        while cur != f:
            assert cur in form_set, f"rho left the reduced forms at {cur}"
            cyc.append(cur)
            cur = rho_step(cur, disc)
        cycles.append(tuple(cyc))
        remaining -= set(cyc)
    return cycles


def form_class_count(disc):
    """Form class number: h(disc) for disc < 0, the narrow class number
    h+(disc) for disc > 0."""
    if disc < 0:
        return len(reduced_imaginary_forms(disc))
    return len(indefinite_cycles(disc))
