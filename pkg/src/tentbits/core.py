"""Word-level model of the tent map in polarized fixed point.

A k-bit register word w stands for the value w / (2**k - 1), so the
all-ones word is exactly 1 and the subtraction 1 - x needed by the
upper branch of the tent map collapses to a bitwise complement.  With
the control parameter fixed at 2 the multiply is a left shift, and one
map step is: complement if the top bit is set, shift, and optionally
inject the XOR of the two lowest bits as the new serial bit.  That
injected bit breaks up the short cycles a bare finite-precision tent
map falls into.

Everything here is a pure function of immutable values; trajectories
are sequential in n but independent seeds can run concurrently.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction

MIN_WIDTH = 2
MAX_WIDTH = 64

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BitWidth:
    """Register width: the number of fractional bits in a state word."""

    k: int

    def __post_init__(self) -> None:
        k = operator.index(self.k)
        object.__setattr__(self, "k", k)
        if not MIN_WIDTH <= k <= MAX_WIDTH:
            raise ValueError(f"width must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {k}")

    @property
    def max_word(self) -> int:
        """Largest word value; also the all-ones pattern that decodes to 1."""
        return (1 << self.k) - 1

    @property
    def ulp(self) -> float:
        """Spacing between adjacent decoded values, 1 / (2**k - 1)."""
        return 1.0 / self.max_word

    def ulp_exact(self) -> Fraction:
        return Fraction(1, self.max_word)


def as_width(width: BitWidth | int) -> BitWidth:
    return width if isinstance(width, BitWidth) else BitWidth(width)


def check_word(w: int, width: BitWidth | int) -> int:
    """Validate that w fits in the register; returns w as a plain int."""
    width = as_width(width)
    w = operator.index(w)
    if not 0 <= w <= width.max_word:
        raise ValueError(f"word {w:#x} does not fit in {width.k} bits")
    return w


@dataclass(frozen=True)
class MapConfig:
    """Generator configuration: width, perturbation switch, and mu.

    Only mu = 2 is accepted; the shift-register construction realizes
    the multiply as a shift and supports no other slope.
    """

    width: BitWidth
    perturbed: bool = True
    mu: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.width, BitWidth):
            object.__setattr__(self, "width", as_width(self.width))
        if self.mu != 2:
            raise ValueError("only mu = 2 is realizable by the shift-register design")


def decode(w: int, width: BitWidth | int) -> float:
    """Decoded value of a state word: w / (2**k - 1).

    This is the unique affine reading that sends the zero word to 0 and
    the all-ones word to 1, which is what makes the bitwise complement
    equal exactly 1 - x.  Beyond 52 bits the float result is rounded;
    use decode_exact when the last bits matter.
    """
    width = as_width(width)
    return check_word(w, width) / width.max_word


def decode_exact(w: int, width: BitWidth | int) -> Fraction:
    """Exact rational value of a state word, lossless at every width."""
    width = as_width(width)
    return Fraction(check_word(w, width), width.max_word)


def encode(x: float | Fraction, width: BitWidth | int) -> int:
    """Nearest state word for x in [0, 1], rounding halves up.

    Rounding happens in exact rational arithmetic, so encode undoes
    decode_exact at every width and decode at widths the float mantissa
    can carry.
    """
    width = as_width(width)
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"cannot encode non-finite value {x!r}")
    if not 0 <= x <= 1:
        raise ValueError(f"value {x!r} outside [0, 1]")
    scaled = Fraction(x) * width.max_word
    return int((2 * scaled + 1) // 2)


def complement(w: int, width: BitWidth | int) -> int:
    """Bitwise complement within k bits: the polarized form of 1 - x."""
    width = as_width(width)
    return check_word(w, width) ^ width.max_word


def perturbation_bit(w: int, width: BitWidth | int) -> int:
    """XOR of the two least significant bits of w.

    Complementing w flips both bits, so the value is unchanged; it may
    be computed before or after the conditional complement of a step.
    """
    w = check_word(w, width)
    return (w ^ (w >> 1)) & 1


def step(config: MapConfig, w: int) -> int:
    """One map update: conditional complement, left shift, serial inject.

    The pre-shift word always has a clear top bit (either it started
    clear, or the complement cleared it), so the shift never overflows.
    """
    width = config.width
    w = check_word(w, width)
    top = (w >> (width.k - 1)) & 1
    t = w ^ width.max_word if top else w
    serial = perturbation_bit(w, width) if config.perturbed else 0
    return ((t << 1) | serial) & width.max_word


def iterate(config: MapConfig, w0: int, n: int) -> list[int]:
    """Trajectory [w0, f(w0), ..., f^n(w0)] of length n + 1."""
    if n < 1:
        raise ValueError(f"need at least one step, got n={n}")
    w = check_word(w0, config.width)
    out = [w]
    for _ in range(n):
        w = step(config, w)
        out.append(w)
    return out


def tent_exact(x, mu=2):
    """Reference tent map on the unit interval: mu*x below 1/2, else mu*(1-x).

    The breakpoint belongs to the upper branch, so tent_exact(1/2) is
    mu/2 * 1 = 1 at mu = 2.  Arithmetic follows the argument type:
    Fraction in, Fraction out, which keeps long reference trajectories
    exact.
    """
    if not 0 <= x <= 1:
        raise ValueError(f"value {x!r} outside [0, 1]")
    if x < _HALF:
        return mu * x
    return mu * (1 - x)


def output_bit(w: int, width: BitWidth | int, tap: str = "msb") -> int:
    """The generator's binary output for one state.

    The default tap is the most significant bit (the branch-decision
    bit of the map); `lsb` taps the freshly injected serial bit instead.
    """
    width = as_width(width)
    w = check_word(w, width)
    if tap == "msb":
        return (w >> (width.k - 1)) & 1
    if tap == "lsb":
        return w & 1
    raise ValueError(f"unknown tap {tap!r}, expected 'msb' or 'lsb'")


def output_stream(words, width: BitWidth | int, tap: str = "msb") -> list[int]:
    """Binary output bits for a word sequence."""
    width = as_width(width)
    return [output_bit(w, width, tap) for w in words]


def decode_series(words, width: BitWidth | int) -> list[float]:
    """Decoded values for a word sequence."""
    width = as_width(width)
    m = width.max_word
    return [check_word(w, width) / m for w in words]


def is_degenerate_seed(w: int, width: BitWidth | int) -> bool:
    """True for the two seeds that sit on the absorbing fixed point.

    0 maps to 0 and all-ones maps to 0 (its complement is the zero
    word); every other word avoids 0 for widths of 3 bits and up.
    """
    width = as_width(width)
    w = check_word(w, width)
    return w == 0 or w == width.max_word
