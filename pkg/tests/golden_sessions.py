"""Deterministic elicitation walks behind the replay-determinism goldens.

Running this module rewrites tests/data/goldens/*.docit2.json.  The files
are frozen test fixtures: regenerate them only when the canonical document
format changes on purpose, and review the byte diff when you do.
"""

from fractions import Fraction as F
from pathlib import Path

from docit2.cards import label_values
from docit2.session import SessionConfig, pending_probe
from docit2.session_io import SessionDocument, load, save
from drivers import SessionDriver, shape_oracle

GOLDEN_DIR = Path(__file__).parent / "data" / "goldens"

ACCEPT = (("accept",),)


def boxed_shapes(config, label_gaps, core_steps=2, support_steps=10):
    """Hidden DM shapes: a grid-aligned box around each label anchor."""
    step = config.resolution or F(1, 100)
    scale = label_values(config.labels, label_gaps)
    shapes = {}
    for label in config.labels:
        snapped = F(round(scale.value_of(label) / step)) * step
        c_lo = max(F(0), snapped - core_steps * step)
        c_hi = min(F(1), snapped + core_steps * step)
        s_lo = max(F(0), c_lo - support_steps * step)
        s_hi = min(F(1), c_hi + support_steps * step)
        shapes[label] = ((s_lo, s_hi), (c_lo, c_hi))
    return shapes


def run_plan(config, label_gaps, shapes, sides):
    """Complete walk: place labels, probe each label, run both side plans.

    ``sides[label]`` is ``[(left_gaps, review), (right_gaps, review)]`` where
    a review is a tuple of ``("accept",)`` and ``("modify", s, r, value)``
    actions; hesitant placements use an empty review.
    """
    d = SessionDriver(config)
    d.dm("place_label_cards", gaps=label_gaps)
    for label in config.labels:
        d.answer_probes(*shapes[label])
        for gaps, review in sides[label]:
            d.dm("place_side_cards", gaps=gaps)
            for action in review:
                if action[0] == "modify":
                    _, s, r, value = action
                    d.dm("modify_ratios", s=s, r=r, value=value)
                    d.proceed()
                else:
                    d.dm("accept_ratios")
            d.proceed()
    return d


def walk_two_label_basic():
    config = SessionConfig(labels=("bad", "good"), scale_name="verdict", h_max=10)
    gaps = [2]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "bad": [([0], ACCEPT), ([1], ACCEPT)],
            "good": [([2, 1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_two_label_hesitant():
    config = SessionConfig(labels=("lo", "hi"), h_max=15)
    gaps = [3]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps, core_steps=3, support_steps=12),
        {
            "lo": [([0], ACCEPT), ([1, [0, 2]], ())],
            "hi": [([[1, 3], 2], ()), ([0], ACCEPT)],
        },
    )


def walk_four_label_mixed():
    config = SessionConfig(
        labels=("none", "low", "high", "full"), scale_name="coverage", h_max=20
    )
    gaps = [1, 2, 1]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "none": [([0], ACCEPT), ([1], ACCEPT)],
            "low": [([2], ACCEPT), ([0, 1], (("modify", 3, 2, "5/2"), ("accept",)))],
            "high": [([1, 1], ACCEPT), ([3], ACCEPT)],
            "full": [([1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_literal_orientation():
    config = SessionConfig(labels=("small", "large"), orientation="literal", h_max=12)
    gaps = [4]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "small": [([0], ACCEPT), ([2, 1], ACCEPT)],
            "large": [([1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_fine_resolution():
    config = SessionConfig(labels=("few", "many"), resolution=F(1, 200), h_max=12)
    gaps = [1]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps, core_steps=4, support_steps=20),
        {
            "few": [([0], ACCEPT), ([1], ACCEPT)],
            "many": [([2], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_coarse_resolution():
    config = SessionConfig(labels=("off", "mid", "on"), resolution=F(1, 20), h_max=12)
    gaps = [1, 1]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps, core_steps=1, support_steps=4),
        {
            "off": [([0], ACCEPT), ([1], ACCEPT)],
            "mid": [([1], ACCEPT), ([0], ACCEPT)],
            "on": [([2], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_modify_then_accept():
    config = SessionConfig(labels=("weak", "strong"), h_max=12)
    gaps = [2]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "weak": [([0], ACCEPT), ([0, 1], (("modify", 3, 2, "2"), ("accept",)))],
            "strong": [([1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_modify_twice():
    config = SessionConfig(labels=("rare", "common"), h_max=20)
    gaps = [3]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "rare": [
                ([0], ACCEPT),
                (
                    [1, 0, 2],
                    (("modify", 4, 3, "3"), ("modify", 3, 2, "2"), ("accept",)),
                ),
            ],
            "common": [([1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_hesitant_joint():
    config = SessionConfig(labels=("cold", "warm", "hot"), h_max=15)
    gaps = [2, 2]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "cold": [([0], ACCEPT), ([1], ACCEPT)],
            "warm": [([1, [1, 2]], ()), ([[0, 1], 1], ())],
            "hot": [([2], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_hesitant_then_modify():
    config = SessionConfig(labels=("dim", "mid", "bright"), h_max=18)
    gaps = [1, 2]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "dim": [([0], ACCEPT), ([1], ACCEPT)],
            "mid": [
                ([2, [0, 3]], ()),
                ([0, 2], (("modify", 3, 2, "5/2"), ("accept",))),
            ],
            "bright": [([1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_zero_gap_scale():
    config = SessionConfig(labels=("no", "maybe", "yes"), h_max=8)
    gaps = [0, 0]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "no": [([0], ACCEPT), ([0], ACCEPT)],
            "maybe": [([0], ACCEPT), ([0], ACCEPT)],
            "yes": [([0], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_asymmetric_scale():
    config = SessionConfig(labels=("base", "peak", "top"), h_max=16)
    gaps = [5, 1]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps, core_steps=3, support_steps=8),
        {
            "base": [([0], ACCEPT), ([2, 2], ACCEPT)],
            "peak": [([1], ACCEPT), ([1], ACCEPT)],
            "top": [([0, 1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_five_label_quick():
    config = SessionConfig(
        labels=("e", "d", "c", "b", "a"), scale_name="grade", h_max=10
    )
    gaps = [1, 1, 1, 1]
    sides = {label: [([0], ACCEPT), ([0], ACCEPT)] for label in config.labels}
    return run_plan(config, gaps, boxed_shapes(config, gaps), sides)


def walk_unicode_labels():
    config = SessionConfig(
        labels=("très bas", "médian", "très haut"),
        scale_name="qualité",
        h_max=12,
        enumeration_cap=500,
    )
    gaps = [2, 3]
    return run_plan(
        config,
        gaps,
        boxed_shapes(config, gaps),
        {
            "très bas": [([0], ACCEPT), ([1], ACCEPT)],
            "médian": [([1, [0, 1]], ()), ([2], ACCEPT)],
            "très haut": [([1], ACCEPT), ([0], ACCEPT)],
        },
    )


def walk_empty_session():
    config = SessionConfig(labels=("x", "y"), scale_name="untouched")
    return SessionDriver(config)


def walk_stopped_during_probes():
    config = SessionConfig(labels=("a", "b"), h_max=8)
    gaps = [1]
    d = SessionDriver(config)
    d.dm("place_label_cards", gaps=gaps)
    oracle = shape_oracle(*boxed_shapes(config, gaps)["a"])
    for _ in range(3):
        d.dm("answer_probe", answer=oracle(pending_probe(d.state)))
    return d


def walk_stopped_at_side_cards():
    config = SessionConfig(labels=("a", "b"), h_max=8)
    gaps = [2]
    d = SessionDriver(config)
    d.dm("place_label_cards", gaps=gaps)
    d.answer_probes(*boxed_shapes(config, gaps)["a"])
    return d


def walk_stopped_at_ratio_review():
    config = SessionConfig(labels=("a", "b"), h_max=8)
    gaps = [2]
    d = SessionDriver(config)
    d.dm("place_label_cards", gaps=gaps)
    d.answer_probes(*boxed_shapes(config, gaps)["a"])
    d.dm("place_side_cards", gaps=[0])
    return d


def walk_stopped_while_adjusting():
    config = SessionConfig(labels=("a", "b"), h_max=8)
    gaps = [2]
    d = SessionDriver(config)
    d.dm("place_label_cards", gaps=gaps)
    d.answer_probes(*boxed_shapes(config, gaps)["a"])
    d.dm("place_side_cards", gaps=[0])
    d.dm("accept_ratios")
    d.proceed()
    d.dm("place_side_cards", gaps=[0, 1])
    d.dm("modify_ratios", s=3, r=2, value="3/2")
    return d


WALKS = {
    "two_label_basic": walk_two_label_basic,
    "two_label_hesitant": walk_two_label_hesitant,
    "four_label_mixed": walk_four_label_mixed,
    "literal_orientation": walk_literal_orientation,
    "fine_resolution": walk_fine_resolution,
    "coarse_resolution": walk_coarse_resolution,
    "modify_then_accept": walk_modify_then_accept,
    "modify_twice": walk_modify_twice,
    "hesitant_joint": walk_hesitant_joint,
    "hesitant_then_modify": walk_hesitant_then_modify,
    "zero_gap_scale": walk_zero_gap_scale,
    "asymmetric_scale": walk_asymmetric_scale,
    "five_label_quick": walk_five_label_quick,
    "unicode_labels": walk_unicode_labels,
    "empty_session": walk_empty_session,
    "stopped_during_probes": walk_stopped_during_probes,
    "stopped_at_side_cards": walk_stopped_at_side_cards,
    "stopped_at_ratio_review": walk_stopped_at_ratio_review,
    "stopped_while_adjusting": walk_stopped_while_adjusting,
}


def regenerate() -> None:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for name in sorted(WALKS):
        state = WALKS[name]().state
        blob = save(SessionDocument.of(state))
        doc = load(blob)
        (GOLDEN_DIR / f"{name}.docit2.json").write_bytes(blob)
        print(
            f"{name}: phase={doc.state.phase} "
            f"events={len(doc.events)} bytes={len(blob)}"
        )


if __name__ == "__main__":
    regenerate()
