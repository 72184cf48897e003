"""
Trace files, detection logs and plot-data export.
"""

from .export import SERIES, export_plot_data, load_report
from .tracefile import TRACE_FORMAT, read_jsonl, read_trace, write_jsonl, write_trace

__all__ = [
    "TRACE_FORMAT",
    "read_trace",
    "write_trace",
    "read_jsonl",
    "write_jsonl",
    "SERIES",
    "export_plot_data",
    "load_report",
]
