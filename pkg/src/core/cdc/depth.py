# src/core/cdc/depth.py
from src.core.errors import TimingLensError


def recommend_depth(freq_ratio: int) -> int:
    """Synchronizer stages for a clock frequency ratio"""
    if freq_ratio < 1:
        raise TimingLensError(f"frequency ratio must be at least 1, got {freq_ratio}")
    if freq_ratio == 1:
        return 2
    if freq_ratio <= 4:
        return 3
    return 4


def frequency_ratio(f_a: float, f_b: float) -> int:
    """max/min of the two clock frequencies, rounded to the nearest integer"""
    if f_a <= 0 or f_b <= 0:
        raise TimingLensError("clock frequencies must be positive")
    return max(1, round(max(f_a, f_b) / min(f_a, f_b)))
