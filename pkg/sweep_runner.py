# sweep_runner.py

import gc
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

import psutil

from config import PERFORMANCE_SETTINGS
from utils import get_optimal_thread_count, memory_threshold

# 로깅 설정
logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def _guarded_call(worker: Callable[[T], R], task: T, idx: int, threshold: float) -> R:
    """단일 작업 실행 (메모리 모니터링 포함)"""
    current_memory = psutil.virtual_memory().used
    if current_memory > threshold:
        # 메모리 사용량이 임계값을 초과하면 잠시 대기
        logger.warning(f"메모리 사용량이 높습니다. 작업 {idx} 대기 중...")
        time.sleep(PERFORMANCE_SETTINGS['memory_wait_seconds'])
        gc.collect()
    return worker(task)


def run_sweep(
    tasks: Sequence[T],
    worker: Callable[[T], R],
    progress_callback: Optional[Callable[[int], None]] = None,
    max_workers: Optional[int] = None,
    label: str = 'sweep',
) -> List[R]:
    """
    매개변수 묶음마다 worker 를 병렬 실행하고 제출 순서대로 결과를 돌려줍니다.
    """
    if not tasks:
        return []
    if max_workers is None:
        max_workers = get_optimal_thread_count()
    max_workers = max(1, min(len(tasks), max_workers))
    threshold = memory_threshold()
    results: List[Optional[R]] = [None] * len(tasks)  # 순서 유지를 위한 초기화

    logger.info(f"[{label}] 스윕 시작: 작업 {len(tasks)}개, 워커 {max_workers}개")
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = [
            (idx, executor.submit(_guarded_call, worker, task, idx, threshold))
            for idx, task in enumerate(tasks)
        ]

        # 순서대로 결과 수집 및 진행률 업데이트
        total = len(tasks)
        for idx, future in futures:
            try:
                results[idx] = future.result()
                if progress_callback:
                    progress_callback(int((idx + 1) / total * 100))
            except Exception as e:
                logger.error(f"[{label}] 작업 {idx} 처리 중 오류 발생: {e}")
                raise

    logger.info(f"[{label}] 스윕 완료")
    return results
