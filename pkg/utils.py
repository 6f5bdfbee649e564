# utils.py

import logging
import os
import json
from typing import List, Optional
from PySide6.QtCore import QSettings
import appdirs
import numpy as np
import psutil

from config import PERFORMANCE_SETTINGS, CORPUS_SETTINGS

# 설정에서 디버그 모드 상태 로드
settings = QSettings('LHCinema', 'hardyLab')
DEBUG_MODE = settings.value('debug_mode', False, type=bool)

# 로깅 설정
logger = logging.getLogger(__name__)

PROJECT_LOGGERS = [
    '__main__',
    'main',
    'commands',
    'disc_core',
    'projections',
    'squarefn',
    'extremal',
    'dual_approx',
    'ledger',
    'experiments',
    'experiment_config',
    'reports',
    'sweep_runner',
    'utils',
]


def get_debug_mode():
    """현재 디버그 모드 상태 반환"""
    return DEBUG_MODE


def set_debug_mode(value: bool):
    """디버그 모드 설정 및 저장"""
    global DEBUG_MODE
    DEBUG_MODE = value
    settings.setValue('debug_mode', value)
    logger.info(f"DEBUG_MODE 설정됨: {DEBUG_MODE}")
    return DEBUG_MODE


def set_last_output_dir(path: str):
    settings.setValue('last_output_dir', path)
    logger.debug(f"마지막 출력 경로 저장: {path}")


def set_logger_level(is_debug: bool):
    """모든 관련 모듈의 로거 레벨을 설정합니다."""
    # 기본 로그 포맷 설정
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    # 콘솔 핸들러 설정
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)

    level = logging.DEBUG if is_debug else logging.INFO
    for name in PROJECT_LOGGERS:
        module_logger = logging.getLogger(name)
        # 기존 핸들러 제거
        module_logger.handlers.clear()
        module_logger.addHandler(console_handler)
        module_logger.setLevel(level)
        # 상위 로거로 전파하지 않음
        module_logger.propagate = False


def conjugate_exponent(p: float) -> float:
    """p' = p/(p-1)"""
    if p <= 1:
        raise ValueError(f"켤레 지수는 p > 1 에서만 정의됩니다: p={p}")
    return p / (p - 1)


def get_optimal_thread_count() -> int:
    """스윕에 사용할 워커 수를 반환"""
    cpu_count = psutil.cpu_count(logical=True) or 1
    limit = PERFORMANCE_SETTINGS['max_threads'] or cpu_count
    return max(1, min(cpu_count, limit))


def memory_threshold() -> float:
    total_memory = psutil.virtual_memory().total
    return total_memory * PERFORMANCE_SETTINGS['memory_limit_percentage'] / 100


def random_disc_coefficients(rng: np.random.Generator, count: int) -> np.ndarray:
    """복소 단위원판에서 균일하게 뽑은 계수"""
    radius = np.sqrt(rng.random(count))
    angle = 2 * np.pi * rng.random(count)
    return radius * np.exp(1j * angle)


def random_coefficient_corpus(
    seed: int,
    size: int,
    max_degree: Optional[int] = None,
    vanish_at_origin: bool = False,
) -> List[np.ndarray]:
    """
    시드로 고정된 무작위 다항식 계수 목록을 생성합니다.
    앞에서부터 순서대로 뽑으므로 size를 늘려도 기존 항목은 바뀌지 않습니다.
    """
    if max_degree is None:
        max_degree = CORPUS_SETTINGS['max_degree']
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(size):
        degree = int(rng.integers(1 if vanish_at_origin else 0, max_degree + 1))
        coeffs = random_disc_coefficients(rng, degree + 1)
        if vanish_at_origin:
            coeffs[0] = 0.0
        if not np.any(np.abs(coeffs) > 0):
            coeffs[-1] = 1.0
        corpus.append(coeffs)
    logger.debug(f"무작위 다항식 {size}개 생성 (seed={seed}, max_degree={max_degree})")
    return corpus


def random_trig_corpus(seed: int, size: int, max_degree: int = 16) -> List[dict]:
    """주파수 -d..d 를 갖는 무작위 삼각다항식 (주파수 -> 계수 사전)"""
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(size):
        degree = int(rng.integers(0, max_degree + 1))
        coeffs = random_disc_coefficients(rng, 2 * degree + 1)
        corpus.append({n: coeffs[n + degree] for n in range(-degree, degree + 1)})
    return corpus


def random_zzbar_coefficients(seed: int, size: int, max_degree: int = 4) -> List[np.ndarray]:
    """z^a z̄^b 계수 행렬 (a, b ≤ 차수) 목록, 앞부분 고정"""
    rng = np.random.default_rng(seed)
    corpus = []
    for _ in range(size):
        degree = int(rng.integers(0, max_degree + 1))
        coeffs = random_disc_coefficients(rng, (degree + 1) ** 2).reshape(degree + 1, degree + 1)
        corpus.append(coeffs)
    return corpus


def format_float(value) -> str:
    """CSV/JSON 출력을 위한 결정적 실수 표기"""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    return repr(float(value))


class LedgerStore:
    def __init__(self):
        self.app_name = "hardyLab"
        self.company = "LHCinema"
        # 사용자 앱 데이터 디렉토리 사용
        self.app_dir = appdirs.user_data_dir(self.app_name, self.company)
        self.ledger_path = os.path.join(self.app_dir, "ledger.json")

    def load(self) -> Optional[dict]:
        if not os.path.exists(self.ledger_path):
            logger.info("저장된 상수 원장이 없습니다")
            return None
        try:
            with open(self.ledger_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
            logger.info(f"상수 원장 로드: {self.ledger_path}")
            return data
        except (OSError, ValueError) as e:
            logger.error(f"상수 원장 로드 실패: {e}")
            return None

    def save(self, data: dict) -> str:
        os.makedirs(self.app_dir, exist_ok=True)
        with open(self.ledger_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, sort_keys=True)
        logger.info(f"상수 원장 저장 완료: {self.ledger_path}")
        return self.ledger_path


# 싱글톤 인스턴스
ledger_store = LedgerStore()
