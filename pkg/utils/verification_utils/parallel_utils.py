from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Dict, List, Tuple

from utils.configHandling_utils.config_utils import RunConfig, SUITE_ORDER # type: ignore
from utils.report_utils.reporting_utils import CheckRecord # type: ignore
from utils.verification_utils.suite_utils import run_suite_part, suite_part_count # type: ignore

NEGATIVE_CONTROL = 'negative_control'

Task = Tuple[str, int]


class SuiteRunner:
    """
    Runs the selected verification suites, in worker processes when WORKERS > 1.

    A suite is split into parts (matgrp has one per field and rank); every part
    draws from its own stream seeded by (seed, suite, part), so the collected
    records do not depend on the number of workers or on completion order.
    """

    def __init__(self, config: RunConfig, logger: Any):
        self.config = config
        self.logger = logger

    def suite_names(self) -> List[str]:
        names = self.config.ordered_suites()
        if self.config.negative_control:
            names.append(NEGATIVE_CONTROL)
        return names

    def tasks(self) -> List[Task]:
        return [(name, part) for name in self.suite_names()
                for part in range(suite_part_count(name, self.config))]

    def run(self) -> List[CheckRecord]:
        tasks = self.tasks()
        if not tasks:
            self.logger.info("No suites selected")
            return []
        if self.config.workers > 1 and len(tasks) > 1:
            results = self._run_parallel(tasks)
        else:
            results = self._run_sequential(tasks)
        order = {name: i for i, name in enumerate(SUITE_ORDER + [NEGATIVE_CONTROL])}
        records: List[CheckRecord] = []
        for task in sorted(results, key=lambda t: (order[t[0]], t[1])):
            records.extend(results[task])
        return records

    def _log_progress(self, done: int, total: int, task: Task, records: List[CheckRecord]) -> None:
        name, part = task
        failed = sum(1 for r in records if r.status == 'fail')
        self.logger.info(f"Suite {name} part {part}: {len(records)} checks, {failed} failed")
        if done % max(1, total // 10) == 0:  # Log every 10%
            self.logger.info(f"Completed {done}/{total} suite parts ({(done / total) * 100:.1f}%)")

    def _run_sequential(self, tasks: List[Task]) -> Dict[Task, List[CheckRecord]]:
        results: Dict[Task, List[CheckRecord]] = {}
        for i, (name, part) in enumerate(tasks, start=1):
            self.logger.info(f"Running suite: {name} part {part}")
            results[(name, part)] = run_suite_part(name, self.config, part)
            self._log_progress(i, len(tasks), (name, part), results[(name, part)])
        return results

    def _run_parallel(self, tasks: List[Task]) -> Dict[Task, List[CheckRecord]]:
        workers = min(self.config.workers, len(tasks))
        self.logger.info(f"Running {len(tasks)} suite parts on {workers} worker processes")
        results: Dict[Task, List[CheckRecord]] = {}
        with ProcessPoolExecutor(max_workers=workers) as executor:
            future_to_task = {executor.submit(run_suite_part, name, self.config, part): (name, part)
                              for name, part in tasks}
            for future in as_completed(future_to_task):
                task = future_to_task[future]
                try:
                    results[task] = future.result()
                except Exception as e:
                    self.logger.error(f"Suite {task[0]} part {task[1]} crashed in its worker: {str(e)}")
                    raise
                self._log_progress(len(results), len(tasks), task, results[task])
        return results
