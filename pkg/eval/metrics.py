"""Acceptance metrics -- scoring, failure checking, aggregation."""

from typing import Any


def score_scenario(result: dict[str, Any]) -> float:
    """Score a scenario result as pass rate.

    Args:
        result: Scenario result dict from run_scenario.

    Returns:
        Float between 0.0 and 1.0.
    """
    total = result.get("total_steps", 0)
    if total == 0:
        return 0.0
    passed = sum(1 for s in result.get("steps", []) if s.get("passed"))
    return passed / total


def check_failures(result: dict[str, Any]) -> list[str]:
    """Extract failure descriptions from scenario result.

    A failed expectation is reported with the mismatching keys; an
    exception is reported with its message.

    Args:
        result: Scenario result dict.

    Returns:
        List of failure description strings.
    """
    failures: list[str] = []
    for i, step in enumerate(result.get("steps", [])):
        if step.get("passed"):
            continue
        if "error" in step:
            failures.append(f"Step {i}: {step['error']}")
            continue
        expected = step.get("expected", {})
        actual = step.get("actual", {})
        keys = [k for k in expected if actual.get(k) != expected[k]]
        detail = ", ".join(f"{k}={actual.get(k)!r} (expected {expected[k]!r})" for k in keys)
        failures.append(f"Step {i}: {detail or 'assertion mismatch'}")
    return failures


def aggregate(results: list[dict[str, Any]]) -> dict[str, Any]:
    """Aggregate multiple scenario results.

    Args:
        results: List of scenario result dicts.

    Returns:
        Dict with total/passed/failed counts, per-scenario scores and
        the overall step pass rate.
    """
    total = len(results)
    passed = sum(1 for r in results if r.get("passed"))
    scores = {r["scenario"]: score_scenario(r) for r in results}
    steps = sum(r.get("total_steps", 0) for r in results)
    passed_steps = sum(1 for r in results for s in r.get("steps", []) if s.get("passed"))
    return {
        "total": total,
        "passed": passed,
        "failed": total - passed,
        "scores": scores,
        "step_pass_rate": passed_steps / steps if steps else 0.0,
    }
