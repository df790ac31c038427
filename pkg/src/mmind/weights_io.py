"""Weight-file parsing/emission, bundled weight vectors, policy construction.

File grammar: optional `#` comment lines and blank lines; data lines of 14
positive decimals separated by spaces or tabs. One data line = fixed mode,
six = staged mode (turn order). Values are kept verbatim through a
parse/emit round-trip.
"""

from __future__ import annotations

from dataclasses import dataclass

from .heuristics import Policy, PolicyKind, StageWeights, WeightVector
from .rules import MM46, parse_display

FEEDBACK_ORDER = (
    "0B-0C", "0B-1C", "0B-2C", "0B-3C", "0B-4C",
    "1B-0C", "1B-1C", "1B-2C", "1B-3C",
    "2B-0C", "2B-1C", "2B-2C", "3B-0C", "4B-0C",
)

# optimized fixed vector, canonical feedback order
FIXED_PAPER = (
    0.473, 0.446, 0.523, 0.410, 0.350,
    0.534, 0.486, 0.423, 0.383,
    0.406, 0.413, 0.458, 0.424, 0.800,
)

# optimized stage-dependent vectors, turns 1..6
STAGED_PAPER = (
    (1.00, 1.00, 0.70, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00),
    (0.70, 0.60, 0.60, 0.51, 0.43, 0.60, 0.85, 0.60, 0.32, 0.34, 0.40, 0.60, 0.40, 1.00),
    (0.70, 0.41, 0.53, 0.47, 0.37, 0.40, 0.47, 0.50, 0.46, 0.48, 0.46, 0.50, 0.50, 0.90),
    (0.30, 0.50, 0.40, 0.50, 0.40, 0.50, 0.50, 0.40, 0.60, 0.40, 0.50, 0.50, 0.50, 1.00),
    (0.40, 0.60, 0.30, 0.60, 0.50, 0.40, 0.50, 0.50, 0.50, 0.60, 0.60, 0.70, 0.60, 0.80),
    (0.20, 0.80, 0.40, 0.60, 0.60, 0.60, 0.70, 0.50, 0.20, 0.60, 0.40, 0.30, 0.50, 0.40),
)

STANDARD_OPENING = "1123"  # the staged model's opening, forceable in the optimizer

BUNDLED_NAMES = ("fixed-paper", "staged-paper", "uniform")


class WeightParseError(ValueError):
    pass


@dataclass(frozen=True)
class WeightFile:
    mode: str  # "fixed" | "staged"
    vectors: tuple[WeightVector, ...]

    def to_policy(self, forced_opening: str | None = None) -> Policy:
        opening = parse_display(forced_opening) if forced_opening else None
        if self.mode == "fixed":
            return Policy(PolicyKind.FIXED_WEIGHT, self.vectors[0], opening)
        return Policy(PolicyKind.STAGE_WEIGHT, StageWeights(self.vectors), opening)


def parse_weights(text: str) -> WeightFile:
    nfb = MM46.feedback_count
    vectors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != nfb:
            raise WeightParseError(
                f"line {lineno}: expected {nfb} values, got {len(fields)}"
            )
        values = []
        for field in fields:
            try:
                v = float(field)
            except ValueError:
                raise WeightParseError(f"line {lineno}: not a number: {field!r}") from None
            if not v > 0:
                raise WeightParseError(f"line {lineno}: non-positive weight {field}")
            values.append(v)
        vectors.append(WeightVector(tuple(values)))
    if len(vectors) == 1:
        return WeightFile("fixed", tuple(vectors))
    if len(vectors) == 6:
        return WeightFile("staged", tuple(vectors))
    raise WeightParseError(f"expected 1 or 6 data lines, got {len(vectors)}")


def emit_weights(wf: WeightFile) -> str:
    lines = [
        f"# mode: {wf.mode}",
        "# columns (canonical feedback order): " + " ".join(FEEDBACK_ORDER),
    ]
    if wf.mode == "staged":
        lines.append("# one line per turn, 1..6")
    for vec in wf.vectors:
        lines.append(" ".join(repr(v) for v in vec.values))
    return "\n".join(lines) + "\n"


def bundled_weights(name: str) -> WeightFile:
    if name == "fixed-paper":
        return WeightFile("fixed", (WeightVector(FIXED_PAPER),))
    if name == "staged-paper":
        return WeightFile("staged", tuple(WeightVector(row) for row in STAGED_PAPER))
    if name == "uniform":
        return WeightFile("fixed", (WeightVector.uniform(),))
    raise KeyError(f"unknown bundled weights {name!r}; have {', '.join(BUNDLED_NAMES)}")


def load_weight_file(source: str) -> WeightFile:
    """Bundled name or path to a weight file."""
    if source in BUNDLED_NAMES:
        return bundled_weights(source)
    with open(source, encoding="utf-8") as fh:
        return parse_weights(fh.read())


def make_policy(spec: str, force_opening: bool = False) -> Policy:
    """Policy from a CLI-style spec string.

    Accepts `fixed:<file|bundled-name>`, `staged:<file|bundled-name>`,
    `shannon`, `knuth`, `most-parts`.
    """
    opening = STANDARD_OPENING if force_opening else None
    if spec == "shannon":
        return Policy(PolicyKind.SHANNON, forced_opening=parse_display(opening) if opening else None)
    if spec == "knuth":
        return Policy(PolicyKind.KNUTH, forced_opening=parse_display(opening) if opening else None)
    if spec == "most-parts":
        return Policy(PolicyKind.MOST_PARTS, forced_opening=parse_display(opening) if opening else None)
    if ":" in spec:
        mode, _, source = spec.partition(":")
        wf = load_weight_file(source)
        if mode == "fixed" and wf.mode != "fixed":
            raise ValueError(f"{source} is a staged file, not fixed")
        if mode == "staged" and wf.mode != "staged":
            raise ValueError(f"{source} is a fixed file, not staged")
        if mode not in ("fixed", "staged"):
            raise ValueError(f"unknown policy mode {mode!r}")
        return wf.to_policy(opening)
    raise ValueError(
        f"unknown policy {spec!r}; use fixed:<src>, staged:<src>, shannon, knuth, most-parts"
    )
