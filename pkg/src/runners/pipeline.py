"""
Scenario Pipeline Runner
========================

Runs a scenario end to end: simulate, simulate the attack-free reference
run when the scenario asks for one, classify, then write events.csv,
windows.csv, report.json and the effective scenario to an output directory.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

from engine.simulator import run as simulate
from engine.trace import SimTrace
from scenarios import corpus_files
from utils.config import ScenarioSpec, load_scenario, save_scenario
from utils.export import export_trace, write_json

from .report import DetectionReport, build_report

logger = logging.getLogger(__name__)


@dataclass
class PipelineResult:
    """Outcome of one pipeline run"""

    spec: ScenarioSpec
    trace: SimTrace
    report: DetectionReport
    output_directory: Path
    baseline_trace: Optional[SimTrace] = None
    files: Dict[str, Path] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return self.report.verdict

    def to_dict(self) -> Dict:
        return {
            "scenario": self.spec.name,
            "seed": self.spec.seed,
            "verdict": self.verdict,
            "expect": self.spec.expect,
            "output_directory": str(self.output_directory),
            "files": {name: str(path) for name, path in self.files.items()},
        }


class ScenarioRunner:
    """Runs scenarios and writes their artifacts under one output directory"""

    def __init__(self, output_directory: Union[str, Path] = Path("out")):
        self.output_directory = Path(output_directory)

    def run(
        self, spec: ScenarioSpec, output_directory: Optional[Path] = None
    ) -> PipelineResult:
        out_dir = Path(output_directory) if output_directory else self.output_directory
        out_dir.mkdir(parents=True, exist_ok=True)

        trace = simulate(spec)
        baseline_trace = None
        if spec.baseline == "reference_run":
            baseline_trace = simulate(spec.without_attacks())

        report = build_report(spec, trace, baseline_trace)

        files = export_trace(trace, out_dir)
        if baseline_trace is not None:
            baseline_files = export_trace(baseline_trace, out_dir / "baseline")
            files.update({f"baseline_{name}": path for name, path in baseline_files.items()})
        files["report"] = write_json(report.to_dict(), out_dir / "report.json")
        files["scenario"] = save_scenario(spec, out_dir / "scenario.yaml")

        logger.info("%s: verdict %s, artifacts in %s", spec.name, report.verdict, out_dir)
        return PipelineResult(
            spec=spec,
            trace=trace,
            report=report,
            output_directory=out_dir,
            baseline_trace=baseline_trace,
            files=files,
        )

    def run_file(
        self, scenario_path: Union[str, Path], seed: Optional[int] = None
    ) -> PipelineResult:
        spec = load_scenario(scenario_path)
        if seed is not None:
            spec = spec.with_seed(seed)
        return self.run(spec)

    def run_corpus(self, seed: Optional[int] = None) -> List[PipelineResult]:
        """Run every bundled scenario into its own subdirectory"""
        results = []
        for path in corpus_files():
            spec = load_scenario(path)
            if seed is not None:
                spec = spec.with_seed(seed)
            results.append(self.run(spec, self.output_directory / spec.name))
        return results


def run_pipeline(
    scenario: Union[str, Path, ScenarioSpec],
    output_directory: Union[str, Path],
    expect: Optional[str] = None,
    seed: Optional[int] = None,
) -> int:
    """
    Run one scenario and print its verdict

    Args:
        scenario: scenario file or an already loaded ScenarioSpec
        output_directory: where the artifacts go
        expect: verdict the run must produce; None accepts any
        seed: optional seed override

    Returns:
        int: 0 on success, 1 when the verdict differs from `expect`
    """
    runner = ScenarioRunner(output_directory)
    if isinstance(scenario, ScenarioSpec):
        spec = scenario if seed is None else scenario.with_seed(seed)
        result = runner.run(spec)
    else:
        result = runner.run_file(scenario, seed)

    print(f"Scenario '{result.spec.name}' (seed {result.spec.seed}): {result.verdict}")
    for row in result.report.evaluation:
        start, end = row["interval"]
        cap, verdict, label = row["capability"], row["verdict"], row["label"]
        print(f"  {cap:<12} [{start}, {end}) {verdict:<20} {label}")
    print(f"Artifacts written to: {result.output_directory}")

    if expect is not None and result.verdict != expect:
        print(f"Expected {expect}, got {result.verdict}")
        return 1
    return 0


def print_corpus_table(results: List[PipelineResult]) -> bool:
    """Print the acceptance table; True when every row matches"""
    rows = [
        (r.spec.name, r.spec.expect or "-", r.verdict, r.report.matches_expectation)
        for r in results
    ]
    width = max([len("scenario")] + [len(name) for name, _, _, _ in rows])
    print(f"{'scenario':<{width}} | {'expected':<18} | {'verdict':<18} | ok")
    print(f"{'-' * width}-+-{'-' * 18}-+-{'-' * 18}-+---")
    for name, expected, verdict, ok in rows:
        print(f"{name:<{width}} | {expected:<18} | {verdict:<18} | {'yes' if ok else 'NO'}")
    return all(ok for _, _, _, ok in rows)


def run_corpus(output_directory: Union[str, Path], seed: Optional[int] = None) -> int:
    results = ScenarioRunner(output_directory).run_corpus(seed)
    return 0 if print_corpus_table(results) else 1
