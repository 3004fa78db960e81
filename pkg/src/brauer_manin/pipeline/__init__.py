"""Problem files, the step runner, reports and the command line."""
from .problem import FORMAT, VERSION, Problem, ProblemError, dump_problem, fixture_path, load_problem, parse_problem
from .report import Report, ReportError, emit_report, parse_report
from .run import COMMANDS, STEPS, run_pipeline

__all__ = [
    "FORMAT", "VERSION", "Problem", "ProblemError", "dump_problem", "fixture_path", "load_problem",
    "parse_problem", "Report", "ReportError", "emit_report", "parse_report", "COMMANDS", "STEPS", "run_pipeline",
]
