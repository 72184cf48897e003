"""
zonecross - Doorway crossing detection from WiFi channel state information

Synthesizes CSI traces of people walking near a transmitter-receiver link,
and detects which of them actually cross the link from the phase of the
ratio between two receive antennas.
"""

__version__ = "0.1.0"
__author__ = "zonecross Team"

# Lazy attribute loading keeps import time light and avoids circular deps.
__all__ = ["detect_trace", "synthesize_trace", "read_trace", "write_trace", "run_eval", "export_plot_data"]


def __getattr__(name):
    # "detect" is the subpackage, so the function is exported under another name
    if name == "detect_trace":
        from .detect.detector import detect as _detect

        return _detect
    if name == "synthesize_trace":
        from .synth.generator import synthesize_trace as _synthesize_trace

        return _synthesize_trace
    if name in ("read_trace", "write_trace"):
        from .storage import tracefile as _tracefile

        return getattr(_tracefile, name)
    if name == "run_eval":
        from .metrics.evaluator import run_eval as _run_eval

        return _run_eval
    if name == "export_plot_data":
        from .storage.export import export_plot_data as _export_plot_data

        return _export_plot_data
    raise AttributeError(f"module {__name__} has no attribute {name}")
