"""Advice tapes and the day-index encodings used for optimal play.

Bits are stored as a string of ``"0"``/``"1"`` characters, most significant
bit first, which is also how tapes are printed by the CLI.
"""

from __future__ import annotations

from .errors import DayOutOfRange, MalformedTape, TapeExhausted


class AdviceTape:
    """A finite bit string read left to right.

    Reading is the only mutation; the cursor never passes the end.
    """

    __slots__ = ("_bits", "_cursor")

    def __init__(self, bits: str = ""):
        if bits.strip("01"):
            raise MalformedTape(f"tape may only contain 0/1, got {bits!r}")
        self._bits = bits
        self._cursor = 0

    @property
    def bits(self) -> str:
        return self._bits

    @property
    def read_cursor(self) -> int:
        return self._cursor

    @property
    def remaining(self) -> int:
        return len(self._bits) - self._cursor

    def read(self, k: int) -> str:
        if k < 0:
            raise ValueError("cannot read a negative number of bits")
        end = self._cursor + k
        if end > len(self._bits):
            raise TapeExhausted(
                f"asked for {k} bits with {self.remaining} left on tape {self._bits!r}"
            )
        out = self._bits[self._cursor : end]
        self._cursor = end
        return out

    def read_bit(self) -> str:
        return self.read(1)

    def read_unary(self) -> int:
        """Consume a run of ones and its terminating zero; return the run length."""
        stop = self._bits.find("0", self._cursor)
        if stop < 0:
            raise TapeExhausted(f"unterminated unary run on tape {self._bits!r}")
        run = stop - self._cursor
        self._cursor = stop + 1
        return run

    def __len__(self) -> int:
        return len(self._bits)

    def __str__(self) -> str:
        return self._bits

    def __repr__(self) -> str:
        return f"AdviceTape({self._bits!r}, cursor={self._cursor})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AdviceTape):
            return self._bits == other._bits
        if isinstance(other, str):
            return self._bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)


def as_tape(tape: AdviceTape | str) -> AdviceTape:
    return tape if isinstance(tape, AdviceTape) else AdviceTape(tape)


def day_bits(n: int) -> int:
    """``ceil(log2 n)``: bits needed to name one of ``n`` days (0 when ``n == 1``)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return (n - 1).bit_length()


def to_bits(value: int, width: int) -> str:
    if width == 0:
        return ""
    return format(value, f"0{width}b")


def encode_day_fixed(day: int, n: int) -> AdviceTape:
    """Write ``day - 1`` big-endian in ``ceil(log2 n)`` bits; for known ``n``."""
    if not 1 <= day <= n:
        raise DayOutOfRange(f"day {day} outside 1..{n}")
    return AdviceTape(to_bits(day - 1, day_bits(n)))


def encode_day_self_delimiting(day: int, n: int) -> AdviceTape:
    """Unary length then payload, ``2 * ceil(log2 n)`` bits in total.

    With ``l = ceil(log2 n)`` the tape is ``l - 1`` ones, a terminating zero,
    then ``day - 1`` in ``l`` bits, so the reader needs no knowledge of ``n``.
    """
    if n < 2:
        raise DayOutOfRange(f"self-delimiting encoding needs n >= 2, got {n}")
    if not 1 <= day <= n:
        raise DayOutOfRange(f"day {day} outside 1..{n}")
    width = day_bits(n)
    return AdviceTape("1" * (width - 1) + "0" + to_bits(day - 1, width))


def decode_day(tape: AdviceTape | str, n_known: int | None = None) -> int:
    """Inverse of the two day encoders, consuming the bits it reads.

    With ``n_known`` the fixed-length layout is assumed; otherwise the
    self-delimiting one.
    """
    tape = as_tape(tape)
    try:
        if n_known is not None:
            payload = tape.read(day_bits(n_known))
        else:
            payload = tape.read(tape.read_unary() + 1)
    except TapeExhausted as exc:
        raise MalformedTape(f"truncated day encoding: {exc}") from exc
    return (int(payload, 2) if payload else 0) + 1
