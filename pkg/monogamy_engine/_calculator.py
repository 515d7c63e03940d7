"""
Module to implement an abstract calculator of the monogamy engine.
"""


import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, Hashable, Iterable, Tuple

from pandas import DataFrame
from tqdm.auto import tqdm

from monogamy_engine._utils.loggable_entity import LoggableEntity
from monogamy_engine.configuration.engine_config import EngineConfig


class Calculator(ABC, LoggableEntity):
    """
    A class to implement an abstract calculator, which memoizes its results per input and can export the last one.
    """


    def __init__(self, config : EngineConfig | None = None, log_level : int | None = None, show_progress : bool = False) -> None:
        """
        Constructor method for the `Calculator` class.

        Args:
            config (EngineConfig | None): the engine configuration (defaults when None).
            log_level (int | None): the log level to be used for filtering logs in the runtime (configured level when None).
            show_progress (bool): whether long computations report progress bars.
        """
        self.config : EngineConfig = config if config is not None else EngineConfig()
        super().__init__(log_level if log_level is not None else self.config.log_level)

        self.show_progress : bool = show_progress
        self.calculation_results : Any = None
        self.__pre_computed_results : Dict[Hashable, Any] = {}


    def check_for_pre_computed_results(self, key : Hashable) -> bool:
        """
        Method that checks if there exists a previously computed result for the given input.

        Args:
            key (Hashable): the input identifying the calculation.

        Returns:
            A flag indicating if pre-computed results are available (and loaded into `calculation_results`).
        """
        self.logger.debug('Checking for pre-computed results')

        found_precomputed_results = key in self.__pre_computed_results

        if found_precomputed_results:
            self.calculation_results = self.__pre_computed_results[key]

        self.logger.debug('Checked for pre-computed results')

        return found_precomputed_results


    @abstractmethod
    def build_new_results(self, *args : Tuple[Any, ...], **kwargs : Dict[str, Any]) -> Any:
        """
        Method to carry out a calculation from scratch.

        Args:
            *args: the arguments to be used for carrying out the calculation (if any).
            **kwargs: the keyword arguments to be used for carrying out the calculation (if any).

        Returns:
            The result of the calculation.
        """


    def calculate(self, *args : Any, **kwargs : Any) -> Any:
        """
        Method to run the calculation, reusing the result of a previous identical call.
        """
        key = (args, tuple(sorted(kwargs.items())))

        if not self.check_for_pre_computed_results(key):
            self.calculation_results = self.build_new_results(*args, **kwargs)
            self.__pre_computed_results[key] = self.calculation_results

        return self.calculation_results


    @abstractmethod
    def to_pandas_dataframe(self, *args : Tuple[Any, ...], **kwargs : Dict[str, Any]) -> DataFrame:
        """
        Method to transform the results of the last calculation into a Pandas DataFrame.

        Returns:
            A Pandas DataFrame containing the results of the performed calculation.
        """


    def to_csv(self, output_path : str, *args : Tuple[Any, ...], **kwargs : Dict[str, Any]) -> None:
        """
        Method to store the results of the last calculation into a CSV file.

        Args:
            output_path: the path where the CSV file with the results will be stored.
        """
        results_df = self.to_pandas_dataframe(*args, **kwargs)
        results_df.to_csv(output_path, index = False, header = True)


    def progress(self, iterable : Iterable, total : int | None = None, description : str | None = None) -> Iterable:
        """
        Method to wrap an iterable in a progress bar, shown only when requested and the log level is INFO or lower.
        """
        return tqdm(iterable, total = total, desc = description, disable = not self.show_progress or self.logger.level > logging.INFO)
