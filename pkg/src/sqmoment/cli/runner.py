"""
Case execution, serial or on a process pool.
"""
import concurrent.futures
import logging
import typing

from ..errors import ConfigError, SqMomentError

logger = logging.getLogger(__name__)


class Case(typing.NamedTuple):
    """
    One unit of work: func(**kwargs) returns a row or a list of rows. Rows are ordered by
    case key, whatever order the workers finish in.
    """
    key: tuple
    label: str
    func: typing.Callable[..., typing.Union[dict, list[dict]]]
    kwargs: dict

    def run(self) -> list[dict]:
        """A numerical error raised by the case becomes one failing row."""
        try:
            result = self.func(**self.kwargs)
        except ConfigError:
            raise
        except SqMomentError as err:
            logger.warning("%s raised %s: %s", self.label, type(err).__name__, err)
            return [{"case": self.label, "passed": False, "error": f"{type(err).__name__}: {err}"}]
        rows = result if isinstance(result, list) else [result]
        return [{"case": self.label, **row} for row in rows]


def _run(case: Case) -> list[dict]:
    return case.run()


def execute(cases: typing.Sequence[Case], jobs: int = 1) -> list[dict]:
    """
    Runs every case and returns the rows sorted by case key.

    :param jobs: worker processes; 1 runs in this process
    """
    if jobs > 1 and len(cases) > 1:
        results: dict[int, list[dict]] = {}
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_run, case): index for index, case in enumerate(cases)}
            for future in concurrent.futures.as_completed(futures):
                results[futures[future]] = future.result()
    else:
        results = {index: case.run() for index, case in enumerate(cases)}
    order = sorted(range(len(cases)), key=lambda index: cases[index].key)
    logger.debug("ran %d cases on %d workers", len(cases), jobs)
    return [row for index in order for row in results[index]]
