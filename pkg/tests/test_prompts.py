"""Prompt templates and chat message assembly."""

import pytest

from solsentry.prompts import (KNOWN_MODELS, PASSTHROUGH_HYPERPARAMETERS,
                               TEMPLATES, TRAINING_SEEDS, build_prompt,
                               get_template)


def test_the_four_templates_exist():
    assert sorted(TEMPLATES) == ["P_b", "P_rb", "P_rcb", "P_rcbi"]


def test_bare_template_has_no_system_turn():
    messages = build_prompt(get_template("P_b"), "x = 1;")
    assert [m["role"] for m in messages] == ["user"]
    assert messages[0]["content"].endswith("\n\nx = 1;")


def test_role_templates_open_with_a_system_turn():
    for template_id in ("P_rb", "P_rcb", "P_rcbi"):
        messages = build_prompt(get_template(template_id), "y;")
        assert [m["role"] for m in messages] == ["system", "user"]
        assert "auditor" in messages[0]["content"]


def test_template_texts_nest_by_richness():
    base = get_template("P_rcb").user_text
    richest = get_template("P_rcbi").user_text
    assert richest.startswith(base)
    assert "nodeType" in richest
    assert "if condition" in get_template("P_b").user_text.lower()


def test_unknown_template_lists_the_known_ones():
    with pytest.raises(KeyError) as excinfo:
        get_template("P_x")
    assert "P_rcbi" in str(excinfo.value)


def test_recorded_run_metadata_shapes():
    assert PASSTHROUGH_HYPERPARAMETERS == {
        "epochs": 3, "batch_size": 1, "learning_rate_multiplier": 2}
    assert set(TRAINING_SEEDS) == {100, 112}
    for per_model in TRAINING_SEEDS.values():
        assert set(per_model) == {"gpt3", "gpt4"}
        for seeds in per_model.values():
            assert set(seeds) == {"P_b", "P_rb", "P_rcb", "P_rcbi"}
            assert all(isinstance(v, int) for v in seeds.values())
    assert set(KNOWN_MODELS) == {"gpt3", "gpt4"}
