# main.py

import argparse
import logging
import sys
import traceback

from commands import (
    EXIT_ERROR,
    SUBCOMMAND_GROUPS,
    BuildLedgerCommand,
    RunExperimentCommand,
    RunGroupCommand,
)
from experiments import EXPERIMENTS
from utils import get_debug_mode, set_debug_mode, set_logger_level

# 로깅 설정
logger = logging.getLogger(__name__)

__version__ = '1.0.0'


def add_common_options(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='JSON 설정 파일 경로')
    parser.add_argument('--out', help='보고서 출력 디렉토리')
    parser.add_argument('--seed', type=int, help='무작위 코퍼스 시드')
    parser.add_argument('--grid-m', type=int, help='경계 격자 크기 M (2의 거듭제곱)')
    parser.add_argument('--grid-r', type=int, help='반지름 Gauss-Legendre 노드 수')
    parser.add_argument('--degree-cap', type=int, help='다항식 차수 상한 N')
    parser.add_argument('--tol', type=float, help='수렴 허용오차')
    parser.add_argument('--debug', action='store_true', help='디버그 로그 출력 (설정에 저장)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hardylab', description='하디/베르그만 공간 수치 실험')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    for group, names in SUBCOMMAND_GROUPS.items():
        add_common_options(subparsers.add_parser(group, help=', '.join(names)))

    verify = subparsers.add_parser('verify', help='실험 하나를 실행')
    verify.add_argument('experiment', choices=sorted(EXPERIMENTS))
    add_common_options(verify)

    ledger = subparsers.add_parser('ledger', help='상수 원장')
    ledger.add_argument('action', choices=['build'])
    add_common_options(ledger)
    return parser


def overrides_from(args: argparse.Namespace) -> dict:
    return {
        'seed': args.seed,
        'grid_m': args.grid_m,
        'grid_r': args.grid_r,
        'degree_cap': args.degree_cap,
        'tol': args.tol,
        'output_dir': args.out,
    }


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.debug:
        # 디버그 모드 토글
        set_debug_mode(not get_debug_mode())
    set_logger_level(get_debug_mode())
    logger.info(f"hardylab {__version__}")

    overrides = overrides_from(args)
    if args.command == 'verify':
        command = RunExperimentCommand(args.experiment, args.config, overrides, args.out)
    elif args.command == 'ledger':
        command = BuildLedgerCommand(args.config, overrides, args.out)
    else:
        command = RunGroupCommand(args.command, args.config, overrides, args.out)
    return command.execute()


if __name__ == '__main__':
    try:
        sys.exit(main())
    except Exception as e:
        error_message = f"오류가 발생했습니다:\n{str(e)}\n\n트레이스백:\n{traceback.format_exc()}"
        print(error_message)
        sys.exit(EXIT_ERROR)
