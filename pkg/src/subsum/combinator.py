"""Deceleration algebra, the convolution expression language, and its evaluator.

A deceleration is the exponent a for which a summatory F(x) is computable in
O(x^(a+eps)); they compose as exact rationals:

    convolution            dec h = (1 - ab) / (2 - a - b)
    k-fold power           dec f_k = 1 - (1 - a) / k
    stretched convolution  dec h = (1 - ab) / ((1-a) k2 + (1-b) k1)
    stretch s -> k*s       dec g = a / k

The evaluator turns an expression into exact sums via the three-term split

    H(x) = sum_{d <= x^(c/k1)} f(d) G((x/d^k1)^(1/k2))
         + sum_{d <= x^((1-c)/k2)} g(d) F((x/d^k2)^(1/k1))
         - F(x^(c/k1)) G(x^((1-c)/k2))

with the split point c chosen from the operand decelerations, pointwise
prefixes from the sieve in `multfn`, and all cutoffs computed by exact
integer root/power comparisons (never by float exponentials).

Expression grammar ('*' convolution, '@k' stretch, '^k' convolution power;
'@'/'^' bind tighter than '*', which is left-associative):

    expr := term ( '*' term )*
    term := atom ( '@' UINT | '^' UINT )*
    atom := NAME | '(' expr ')'

NAME is one of the base catalog atoms: one, id, id2, id3, chi4, mu, tau2.

A k-fold power of `one` is replaced by its divisor-function decomposition
(tau2 pairs, one trailing `one` if k is odd) before anything else happens;
the pointwise function is identical and the deceleration then agrees with
the closed form for multidimensional divisor functions.  Other trees are
computed exactly as written, so their symbolic deceleration is grouping
dependent; the jointly optimized Gaussian-divisor values come from the
dedicated `gaussian_dec`, not from the generic tree.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .arith import I64_MAX, ikrt, wide_check
from .base_summatory import ATOM_NAMES, catalog_atom
from .multfn import (
    PrimePowerFn,
    algorithm_m,
    algorithm_m_sum,
    convolve_prime_power,
    stretch_prime_power,
)

Deceleration = Fraction

# Below this argument the three-term identity degenerates (x^c ~ 1) and a
# direct sieve of the convolved descriptor is both simpler and faster.
SMALL_THRESHOLD = 1000


class DecelerationError(ValueError):
    """A deceleration precondition (a + b < 2, or range [0, 1]) failed."""


def _as_dec(value) -> Fraction:
    a = Fraction(value)
    if a < 0 or a > 1:
        raise DecelerationError(f"deceleration {a} outside [0, 1]")
    return a


def dec_convolve(a: Fraction, b: Fraction) -> Fraction:
    """Deceleration of f * g from those of f and g; requires a + b < 2."""
    a, b = _as_dec(a), _as_dec(b)
    if a + b >= 2:
        raise DecelerationError("convolution rule requires a + b < 2")
    return (1 - a * b) / (2 - a - b)


def dec_conv_power(a: Fraction, k: int) -> Fraction:
    """Deceleration of the k-fold convolution power of f."""
    a = _as_dec(a)
    if k < 1:
        raise ValueError("power order must be >= 1")
    if k == 1:
        return a
    if a == 1:
        raise DecelerationError("k-fold power rule requires dec f < 1")
    return 1 - (1 - a) / k


def dec_generalized(a: Fraction, k1: int, b: Fraction, k2: int) -> Fraction:
    """Deceleration of sum_{d1^k1 d2^k2 = n} f(d1) g(d2)."""
    a, b = _as_dec(a), _as_dec(b)
    if k1 < 1 or k2 < 1:
        raise ValueError("stretch orders must be >= 1")
    if a + b >= 2:
        raise DecelerationError("generalized rule requires a + b < 2")
    return (1 - a * b) / ((1 - a) * k2 + (1 - b) * k1)


def optimal_split(a: Fraction, k1: int, b: Fraction, k2: int) -> Fraction:
    """The split exponent c equalizing the two sums of the three-term identity."""
    a, b = _as_dec(a), _as_dec(b)
    if k1 < 1 or k2 < 1:
        raise ValueError("stretch orders must be >= 1")
    if a + b >= 2:
        raise DecelerationError("split rule requires a + b < 2")
    return Fraction((1 - b) * k1, (1 - a) * k2 + (1 - b) * k1)


def tau_k_dec(k: int) -> Fraction:
    """Deceleration of the k-dimensional divisor function tau_k.

    Positive orders follow the even/odd closed form built on dec tau2 = 1/3;
    negative orders are k-fold Moebius powers.  k = 0 and k = 1 are rejected
    (tau1 is the unit function, deceleration 0 via the catalog).
    """
    if k >= 2:
        if k % 2 == 0:
            return 1 - Fraction(4, 3 * k)
        return 1 - Fraction(4, 3 * k + 1)
    if k <= -1:
        return 1 - Fraction(1, 3 * (-k))
    raise ValueError("tau_k_dec covers k >= 2 and k <= -1")


def gaussian_dec(k: int) -> Fraction:
    """Deceleration for the norm-summed k-dimensional Gaussian divisor count.

    Convolves tau_k with the k-fold power of chi4 (deceleration 1 - 1/k);
    closes to 1 - 4/(7k) for even k and 1 - 4/(7k+1) for odd k.
    """
    if k < 1:
        raise ValueError("dimension must be >= 1")
    tau = Fraction(0) if k == 1 else tau_k_dec(k)
    return dec_convolve(tau, dec_conv_power(Fraction(0), k))


# --- expression AST ---------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Convolve:
    left: "SummatoryExpr"
    right: "SummatoryExpr"


@dataclass(frozen=True)
class Stretch:
    inner: "SummatoryExpr"
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("stretch order must be >= 1")


@dataclass(frozen=True)
class ConvPower:
    inner: "SummatoryExpr"
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("power order must be >= 1")


SummatoryExpr = Union[Atom, Convolve, Stretch, ConvPower]


class ExprSyntaxError(ValueError):
    """Parse failure; `offset` is the byte position in the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


def parse_expr(text: str) -> SummatoryExpr:
    """Parse the expression grammar; whitespace is insignificant."""
    for i, ch in enumerate(text):
        if ord(ch) > 127:
            raise ExprSyntaxError("expression must be ASCII", i)
    n = len(text)
    pos = 0

    def skip() -> None:
        nonlocal pos
        while pos < n and text[pos] in " \t\r\n":
            pos += 1

    def parse_uint(op: str) -> int:
        nonlocal pos
        skip()
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ExprSyntaxError(f"expected integer after {op!r}", start)
        value = int(text[start:pos])
        if value == 0:
            raise ExprSyntaxError(f"order after {op!r} must be >= 1", start)
        return value

    def parse_atom() -> SummatoryExpr:
        nonlocal pos
        skip()
        if pos >= n:
            raise ExprSyntaxError("unexpected end of expression", pos)
        ch = text[pos]
        if ch == "(":
            pos += 1
            node = parse_chain()
            skip()
            if pos >= n or text[pos] != ")":
                raise ExprSyntaxError("expected ')'", pos)
            pos += 1
            return node
        if "a" <= ch <= "z":
            start = pos
            while pos < n and (text[pos].isdigit() or text[pos] == "_" or "a" <= text[pos] <= "z"):
                pos += 1
            name = text[start:pos]
            if name not in ATOM_NAMES:
                raise ExprSyntaxError(f"unknown atom {name!r}", start)
            return Atom(name)
        raise ExprSyntaxError(f"unexpected character {ch!r}", pos)

    def parse_term() -> SummatoryExpr:
        nonlocal pos
        node = parse_atom()
        skip()
        while pos < n and text[pos] in "@^":
            op = text[pos]
            pos += 1
            k = parse_uint(op)
            node = Stretch(node, k) if op == "@" else ConvPower(node, k)
            skip()
        return node

    def parse_chain() -> SummatoryExpr:
        nonlocal pos
        node = parse_term()
        skip()
        while pos < n and text[pos] == "*":
            pos += 1
            node = Convolve(node, parse_term())
            skip()
        return node

    root = parse_chain()
    skip()
    if pos != n:
        raise ExprSyntaxError("unexpected trailing input", pos)
    return root


def format_expr(expr: SummatoryExpr) -> str:
    """Render an AST back to grammar text; parse_expr(format_expr(e)) == e."""
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, (Stretch, ConvPower)):
        inner = format_expr(expr.inner)
        if isinstance(expr.inner, Convolve):
            inner = f"({inner})"
        op = "@" if isinstance(expr, Stretch) else "^"
        return f"{inner}{op}{expr.k}"
    left = format_expr(expr.left)
    right = format_expr(expr.right)
    if isinstance(expr.right, Convolve):  # '*' is left-associative
        right = f"({right})"
    return f"{left} * {right}"


def _tau_chain(pairs: int, odd: bool) -> SummatoryExpr:
    node: SummatoryExpr = Atom("tau2")
    for _ in range(pairs - 1):
        node = Convolve(node, Atom("tau2"))
    if odd:
        node = Convolve(node, Atom("one"))
    return node


def _canonicalize(expr: SummatoryExpr) -> SummatoryExpr:
    """Drop unit stretches/powers and decompose one^k into tau2 pairs."""
    if isinstance(expr, Atom):
        return expr
    if isinstance(expr, Stretch):
        inner = _canonicalize(expr.inner)
        return inner if expr.k == 1 else Stretch(inner, expr.k)
    if isinstance(expr, Convolve):
        return Convolve(_canonicalize(expr.left), _canonicalize(expr.right))
    inner = _canonicalize(expr.inner)
    if expr.k == 1:
        return inner
    if inner == Atom("one"):
        return _tau_chain(expr.k // 2, odd=bool(expr.k % 2))
    return ConvPower(inner, expr.k)


def _hoist(expr: SummatoryExpr) -> tuple[SummatoryExpr, int]:
    """Split one stretch layer off a convolution operand (bare means k = 1)."""
    if isinstance(expr, Stretch):
        return expr.inner, expr.k
    return expr, 1


def expr_deceleration(expr: SummatoryExpr) -> Fraction:
    """Symbolic deceleration of the tree as written (bottom-up composition)."""

    def walk(e: SummatoryExpr, path: str) -> Fraction:
        if isinstance(e, Atom):
            return catalog_atom(e.name).deceleration
        if isinstance(e, Stretch):
            return walk(e.inner, path + ".inner") / e.k
        if isinstance(e, ConvPower):
            return dec_conv_power(walk(e.inner, path + ".inner"), e.k)
        f, k1 = _hoist(e.left)
        g, k2 = _hoist(e.right)
        a = walk(f, path + ".left")
        b = walk(g, path + ".right")
        try:
            return dec_generalized(a, k1, b, k2)
        except DecelerationError as exc:
            raise DecelerationError(f"{exc} at node {path}") from None

    return walk(_canonicalize(expr), "root")


_DERIVED_TEXT = {
    "sigma1": "id * one",
    "r4": "chi4 * one",
    "phi": "mu * id",
    "jordan2": "mu * id2",
    "tau3": "one^3",
    "tau4": "one^4",
    "tau2_star": "mu@2 * tau2",
    "tau2_sq": "mu@2 * (one^4)",
    "gauss_t2": "(one * chi4)^2",
}

DERIVED_NAMES = tuple(sorted(_DERIVED_TEXT))


def catalog_derived(name: str) -> SummatoryExpr:
    """Expression tree for a named derived function (sigma1, phi, tau2_star, ...)."""
    try:
        return parse_expr(_DERIVED_TEXT[name])
    except KeyError:
        raise ValueError(
            f"unknown derived function {name!r}; catalog: {', '.join(DERIVED_NAMES)}"
        ) from None


# --- evaluator --------------------------------------------------------------


def _floor_power(x: int, e: Fraction) -> int:
    """floor(x**e) for rational 0 < e <= 1, by exact integer root extraction."""
    if x <= 1:
        return x
    return ikrt(x ** e.numerator, e.denominator)


class _Node:
    """Resolved expression node: pointwise descriptor + memoized summatory."""

    ppf: PrimePowerFn
    dec: Fraction

    def __init__(self):
        self.memo: dict[int, int] = {}
        self._vals: np.ndarray | None = None
        self._pref = None  # int64 cumsum, or list[int] when sums outgrow 64 bits

    def _ensure_prefix(self, n: int) -> None:
        if self._vals is not None and self._vals.shape[0] > n:
            return
        have = 0 if self._vals is None else self._vals.shape[0] - 1
        target = max(n, 2 * have, 64)
        vals = algorithm_m(self.ppf, target).values
        top = int(np.abs(vals).max(initial=0))
        if top and top > I64_MAX // (target + 1):
            acc, pref = 0, [0] * (target + 1)
            for i in range(1, target + 1):
                acc += int(vals[i])
                pref[i] = acc
        else:
            pref = np.cumsum(vals, dtype=np.int64)
        self._vals, self._pref = vals, pref

    def value_at(self, d: int) -> int:
        return int(self._vals[d])

    def prefix_to(self, d: int) -> int:
        return int(self._pref[d])

    def eval(self, x: int) -> int:
        raise NotImplementedError


class _AtomNode(_Node):
    def __init__(self, name: str):
        super().__init__()
        entry = catalog_atom(name)
        self.ppf = entry.pointwise
        self.dec = entry.deceleration
        self._summatory = entry.summatory

    def eval(self, x: int) -> int:
        if x <= 0:
            return 0
        hit = self.memo.get(x)
        if hit is None:
            hit = self.memo[x] = wide_check(self._summatory(x))
        return hit


class _StretchNode(_Node):
    def __init__(self, inner: _Node, k: int):
        super().__init__()
        self.inner = inner
        self.k = k
        self.ppf = stretch_prime_power(inner.ppf, k)
        self.dec = inner.dec / k

    def eval(self, x: int) -> int:
        if x <= 0:
            return 0
        return self.inner.eval(ikrt(x, self.k))


class _ConvNode(_Node):
    def __init__(self, fnode: _Node, k1: int, gnode: _Node, k2: int, threshold: int):
        super().__init__()
        self.fnode, self.k1 = fnode, k1
        self.gnode, self.k2 = gnode, k2
        self.threshold = threshold
        self.ppf = convolve_prime_power(
            stretch_prime_power(fnode.ppf, k1), stretch_prime_power(gnode.ppf, k2)
        )
        self.dec = dec_generalized(fnode.dec, k1, gnode.dec, k2)
        self.split = optimal_split(fnode.dec, k1, gnode.dec, k2)

    def eval(self, x: int) -> int:
        if x <= 0:
            return 0
        hit = self.memo.get(x)
        if hit is not None:
            return hit
        if x <= self.threshold:
            self._ensure_prefix(x)
            value = wide_check(self.prefix_to(x))
        else:
            value = self.eval_identity(x, self.split)
        self.memo[x] = value
        return value

    def _half_sum(self, x: int, side: _Node, k_self: int, other: _Node, k_other: int, cut: int) -> int:
        """sum_{d <= cut, side(d) != 0} side(d) * Other((x / d^k_self)^(1/k_other))."""
        side._ensure_prefix(cut)
        other_eval = other.eval
        total = 0
        d = 1
        while d <= cut:
            if k_self == 1 and d * d > x:
                # equal-quotient block: x//d constant for d in [d, d_hi]
                q = x // d
                d_hi = min(cut, x // q)
                weight = side.prefix_to(d_hi) - side.prefix_to(d - 1)
                if weight:
                    total += weight * other_eval(ikrt(q, k_other))
                d = d_hi + 1
                continue
            v = side.value_at(d)
            if v:
                y = x // d**k_self
                total += v * other_eval(y if k_other == 1 else ikrt(y, k_other))
            d += 1
        return total

    def eval_identity(self, x: int, c: Fraction) -> int:
        """The three-term splitting identity with split exponent c in (0, 1)."""
        if not 0 < c < 1:
            raise ValueError("split exponent must lie strictly between 0 and 1")
        if x <= 0:
            return 0
        d1 = _floor_power(x, c / self.k1)
        d2 = _floor_power(x, (1 - c) / self.k2)
        total = self._half_sum(x, self.fnode, self.k1, self.gnode, self.k2, d1)
        total += self._half_sum(x, self.gnode, self.k2, self.fnode, self.k1, d2)
        cross = self.fnode.prefix_to(d1) * self.gnode.prefix_to(d2) if d1 and d2 else 0
        return wide_check(total - cross)


def _resolve(expr: SummatoryExpr, threshold: int) -> _Node:
    cache: dict[SummatoryExpr, _Node] = {}

    def build(e: SummatoryExpr) -> _Node:
        node = cache.get(e)
        if node is not None:
            return node
        if isinstance(e, Atom):
            node = _AtomNode(e.name)
        elif isinstance(e, Stretch):
            node = _StretchNode(build(e.inner), e.k)
        elif isinstance(e, ConvPower):
            base = build(e.inner)
            node = base
            for _ in range(e.k - 1):
                node = _ConvNode(node, 1, base, 1, threshold)
        else:
            f, k1 = _hoist(e.left)
            g, k2 = _hoist(e.right)
            node = _ConvNode(build(f), k1, build(g), k2, threshold)
        cache[e] = node
        return node

    return build(_canonicalize(expr))


class SummatoryEvaluator:
    """A bound expression mapping x to the exact sum of its function over n <= x.

    Memo tables are per evaluator and write-once per key, so one evaluator
    amortizes across many arguments; racing writers would only ever store
    equal values.
    """

    def __init__(self, expr: SummatoryExpr | str, small_threshold: int = SMALL_THRESHOLD):
        if isinstance(expr, str):
            expr = parse_expr(expr)
        self.expr = expr
        self.small_threshold = small_threshold
        self._root = _resolve(expr, small_threshold)

    @property
    def deceleration(self) -> Fraction:
        return self._root.dec

    @property
    def pointwise(self) -> PrimePowerFn:
        return self._root.ppf

    def eval(self, x: int) -> int:
        if x < 0:
            raise ValueError("negative bound")
        if x >= 1 << 63:
            raise OverflowError("bound exceeds the unsigned 63-bit input cap")
        return self._root.eval(x)

    def eval_with_split(self, x: int, c: Fraction) -> int:
        """Diagnostic: force the three-term identity with an explicit split c.

        The result is identical for every admissible c; only the cost moves.
        Requires the root to be a convolution.
        """
        if not isinstance(self._root, _ConvNode):
            raise ValueError("expression root is not a convolution")
        if x < 0:
            raise ValueError("negative bound")
        return self._root.eval_identity(x, Fraction(c))


def eval_summatory(ev: SummatoryEvaluator, x: int) -> int:
    """Exact sum over n <= x of the evaluator's bound expression."""
    return ev.eval(x)


def direct_summatory(expr: SummatoryExpr | str, x: int) -> int:
    """One-shot sieve summation of an expression (no splitting); small x only."""
    if isinstance(expr, str):
        expr = parse_expr(expr)
    ev = SummatoryEvaluator(expr)
    return algorithm_m_sum(ev.pointwise, x)
