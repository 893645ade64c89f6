"""
Window-stability convergence detection on the global objective.
"""

from typing import Optional, Sequence


def detect_convergence(history: Sequence[float], window: int, eps: float) -> Optional[int]:
    """
    First index whose window of samples is flat.

    Args:
        history: Objective per iteration
        window: W, samples per window (history[i : i + W])
        eps: Tolerance relative to max(1, |history[i]|)

    Returns:
        Index i of the first flat window, or None
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    for i in range(len(history) - window + 1):
        chunk = history[i:i + window]
        if max(chunk) - min(chunk) <= eps * max(1.0, abs(history[i])):
            return i
    return None
