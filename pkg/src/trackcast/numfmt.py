"""Fixed-precision numeric rendering shared by all text outputs."""


def fixed6(value: float) -> str:
    # round first so values that round to zero never render as -0.000000
    return f"{round(value, 6) + 0.0:.6f}"
