# commands.py

import json
import logging
import os
from typing import Any, Dict, List, Optional

from experiment_config import load_config
from experiments import run_experiment
from ledger import load_or_build_ledger
from reports import to_jsonable, write_failure, write_reports
from utils import set_last_output_dir

# 로깅 설정
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2

SUBCOMMAND_GROUPS = {
    'project': ['monomial-projection', 'szego-norm'],
    'squarefn': ['cone-geometry', 'calderon-sweep'],
    'extremal': ['hilbert-closed-forms', 'optimality', 'ryabykh'],
    'dual': ['duality'],
    'approx': ['best-approx', 'cross-norm'],
}


class Command:
    def execute(self) -> int:
        raise NotImplementedError


class RunExperimentCommand(Command):
    def __init__(self, experiment: str, config_path: Optional[str] = None,
                 overrides: Optional[Dict[str, Any]] = None, out_root: Optional[str] = None):
        self.experiment = experiment
        self.config_path = config_path
        self.overrides = overrides or {}
        self.out_root = out_root
        logger.debug(f"[RunExperimentCommand] 초기화: {experiment}")

    def execute(self) -> int:
        out_dir = os.path.join(self.out_root or 'results', self.experiment)
        try:
            config = load_config(self.experiment, self.config_path, self.overrides)
            if self.out_root is None:
                out_dir = os.path.join(config.output_dir, self.experiment)
            result = run_experiment(config)
            write_reports(result, config, out_dir)
            set_last_output_dir(out_dir)
        except Exception as e:
            logger.exception(f"[RunExperimentCommand] {self.experiment} 실행 중 오류 발생: {e}")
            write_failure(self.experiment, e, out_dir)
            return EXIT_ERROR
        if not result.all_pass:
            logger.warning(f"[RunExperimentCommand] {self.experiment}: 통과하지 못한 검사가 있습니다")
            return EXIT_CHECK_FAILED
        logger.info(f"[RunExperimentCommand] {self.experiment} 완료")
        return EXIT_OK


class RunGroupCommand(Command):
    def __init__(self, group: str, config_path: Optional[str] = None,
                 overrides: Optional[Dict[str, Any]] = None, out_root: Optional[str] = None):
        if group not in SUBCOMMAND_GROUPS:
            raise ValueError(f"알 수 없는 명령 묶음: {group}")
        self.commands: List[Command] = [
            RunExperimentCommand(name, config_path, overrides, out_root)
            for name in SUBCOMMAND_GROUPS[group]
        ]
        logger.info(f"[RunGroupCommand] {group}: 실험 {len(self.commands)}개 예정")

    def execute(self) -> int:
        return max(command.execute() for command in self.commands)


class BuildLedgerCommand(Command):
    def __init__(self, config_path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None,
                 out_root: Optional[str] = None):
        self.config_path = config_path
        self.overrides = overrides or {}
        self.out_root = out_root

    def execute(self) -> int:
        out_dir = os.path.join(self.out_root or 'results', 'ledger')
        try:
            config = load_config('ledger-build', self.config_path, self.overrides)
            ledger = load_or_build_ledger(
                config, rebuild=True,
                progress_callback=lambda value: logger.info(f"[BuildLedgerCommand] 진행률 {value}%"),
            )
            os.makedirs(out_dir, exist_ok=True)
            path = os.path.join(out_dir, 'ledger.json')
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(to_jsonable(ledger.to_dict()), f, indent=2, sort_keys=True, ensure_ascii=False)
            logger.info(f"[BuildLedgerCommand] 원장 저장: {path}")
            return EXIT_OK
        except Exception as e:
            logger.exception(f"[BuildLedgerCommand] 원장 계산 중 오류 발생: {e}")
            write_failure('ledger-build', e, out_dir)
            return EXIT_ERROR
