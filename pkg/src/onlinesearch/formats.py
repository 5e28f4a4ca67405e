"""Sequence files, transcript documents and bound-curve CSV.

Two sequence formats are read and written:

* ``doc``: a JSON object ``{"m": ..., "M": ..., "prices": [...]}``, with an
  optional ``"metadata"`` block;
* ``plain``: one price per line, bounds supplied separately.

Floats are written with ``repr``, the shortest string that round-trips.
"""

from __future__ import annotations

import io
import json
from pathlib import Path

from .adversary import AdversaryTranscript, StaircaseFamily
from .analysis import BoundCurve
from .errors import OnlineSearchError, SequenceFileError
from .market import MarketBounds, PriceSequence

CSV_HEADER = "b,advice_bound,det_bound,rand_upper,rand_lower"


def _num(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def dumps_doc(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def sequence_doc(seq: PriceSequence, metadata: dict | None = None) -> dict:
    doc: dict = {"m": seq.bounds.m, "M": seq.bounds.M, "prices": list(seq.prices)}
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def sequence_plain(seq: PriceSequence) -> str:
    return "".join(repr(p) + "\n" for p in seq.prices)


def transcript_doc(transcript: AdversaryTranscript) -> dict:
    return sequence_doc(transcript.sequence, transcript.metadata())


def staircase_doc(family: StaircaseFamily) -> dict:
    return {
        "m": family.bounds.m,
        "M": family.bounds.M,
        "n": family.n,
        "delta": family.delta,
        "members": [list(s.prices) for s in family.members],
    }


def parse_prices(text: str) -> list[float]:
    """Comma- or newline-separated decimals."""
    out = []
    for token in text.replace(",", "\n").split():
        try:
            out.append(float(token))
        except ValueError as exc:
            raise SequenceFileError(f"not a number: {token!r}") from exc
    return out


def loads_sequence(text: str, bounds: MarketBounds | None = None) -> PriceSequence:
    """Parse either sequence format. Bounds given here override those in a doc."""
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise SequenceFileError(f"invalid sequence document: {exc}") from exc
            if "prices" not in doc:
                raise SequenceFileError("sequence document has no 'prices' field")
            if bounds is None:
                if "m" not in doc or "M" not in doc:
                    raise SequenceFileError("sequence document needs 'm' and 'M'")
                bounds = MarketBounds(doc["m"], doc["M"])
            prices = [float(p) for p in doc["prices"]]
        else:
            if bounds is None:
                raise SequenceFileError("plain sequence files need bounds from the caller")
            prices = parse_prices(text)
        return PriceSequence(tuple(prices), bounds)
    except SequenceFileError:
        raise
    except (OnlineSearchError, TypeError, ValueError) as exc:
        raise SequenceFileError(str(exc)) from exc


def read_sequence(path: str | Path, bounds: MarketBounds | None = None) -> PriceSequence:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SequenceFileError(f"cannot read {path}: {exc}") from exc
    return loads_sequence(text, bounds)


def curve_csv(curve: BoundCurve, dense: bool = False) -> str:
    buf = io.StringIO()
    buf.write(f"# fluctuation={_num(curve.fluctuation)},crossover={_num(curve.crossover)}\n")
    buf.write(CSV_HEADER + "\n")
    points = curve.dense if dense else curve.rows
    for b, bound in points:
        b_text = str(b) if isinstance(b, int) else repr(b)
        buf.write(
            ",".join(
                [b_text, _num(bound), _num(curve.det_bound), _num(curve.rand_upper), _num(curve.rand_lower)]
            )
            + "\n"
        )
    return buf.getvalue()


def curve_doc(curve: BoundCurve) -> dict:
    return {
        "fluctuation": curve.fluctuation,
        "crossover": curve.crossover,
        "det_bound": curve.det_bound,
        "rand_upper": curve.rand_upper,
        "rand_lower": curve.rand_lower,
        "rows": [{"b": b, "advice_bound": v} for b, v in curve.rows],
        "curve": [{"b": b, "advice_bound": v} for b, v in curve.dense],
    }
