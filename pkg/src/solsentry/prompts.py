"""The four shipped prompt templates and the run metadata they travel with.

Template text is frozen; tests hash it against golden fixture files. The
seed tables and tuning parameters are recorded pass-through metadata for
reproducing external runs — nothing here trains anything.
"""

from __future__ import annotations

from dataclasses import dataclass

_ROLE = "You are a smart contract security auditor."
_INSTRUCTION = "Write the if condition to detect this instruction."
_INSTRUCTION_LOWER = "write the if condition to detect this instruction."
_CONTEXT = ("Using Solidity-ast and typescript, write the if condition to "
            "detect this instruction. The output should only contain the if "
            "condition.")
_AUX = ("Keep in mind that The following ast structures could have different "
        "values depending on their nodeType: Expression.nodeType "
        "rightExpression.nodeType leftExpression.nodeType "
        "leftHandSide.nodeType rightHandSide.nodeType")


@dataclass(frozen=True)
class PromptTemplate:
    template_id: str
    system_text: str | None
    user_text: str


TEMPLATES: dict[str, PromptTemplate] = {
    "P_b": PromptTemplate("P_b", None, _INSTRUCTION),
    "P_rb": PromptTemplate("P_rb", _ROLE, _INSTRUCTION_LOWER),
    "P_rcb": PromptTemplate("P_rcb", _ROLE, _CONTEXT),
    "P_rcbi": PromptTemplate("P_rcbi", _ROLE, _CONTEXT + " " + _AUX),
}


def get_template(template_id: str) -> PromptTemplate:
    if template_id not in TEMPLATES:
        known = ", ".join(sorted(TEMPLATES))
        raise KeyError(f"unknown template {template_id!r} (have {known})")
    return TEMPLATES[template_id]


def build_prompt(template: PromptTemplate, snippet: str) -> list[dict]:
    """Chat messages for one instance: optional system turn, then the
    instruction with the snippet below it."""
    messages = []
    if template.system_text is not None:
        messages.append({"role": "system", "content": template.system_text})
    messages.append({"role": "user",
                     "content": template.user_text + "\n\n" + snippet})
    return messages


# Tuning configuration used by the external runs this toolkit mirrors;
# carried as metadata on generation configs, never executed locally.
PASSTHROUGH_HYPERPARAMETERS = {
    "epochs": 3,
    "batch_size": 1,
    "learning_rate_multiplier": 2,
}

# Seeds per (training-set size, model family, template).
TRAINING_SEEDS = {
    100: {
        "gpt3": {"P_b": 184181018, "P_rb": 1229186277,
                 "P_rcb": 2050353472, "P_rcbi": 1082851968},
        "gpt4": {"P_b": 1546849632, "P_rb": 2143196420,
                 "P_rcb": 1653381796, "P_rcbi": 542758792},
    },
    112: {
        "gpt3": {"P_b": 317425969, "P_rb": 1011665401,
                 "P_rcb": 1553307650, "P_rcbi": 294133873},
        "gpt4": {"P_b": 1692427035, "P_rb": 1804209602,
                 "P_rcb": 1109655604, "P_rcbi": 956977286},
    },
}

KNOWN_MODELS = {
    "gpt3": "gpt-3.5-turbo-1106",
    "gpt4": "gpt-4o-mini-2024-07-18",
}
