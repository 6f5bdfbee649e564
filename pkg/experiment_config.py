# experiment_config.py

import json
import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional

import numpy as np
from packaging.version import InvalidVersion, Version

from config import CORPUS_SETTINGS, NUMERIC_SETTINGS, SCHEMA_VERSION
from disc_core import PolarGrid, TaylorPoly, make_polar_grid

# 로깅 설정
logger = logging.getLogger(__name__)


@dataclass
class ExperimentConfig:
    """
    실험 하나의 설정. 기본값 < JSON 파일 < 명령줄 순으로 덮어씁니다.
    kernel 은 계수 목록 (실수 또는 [실부, 허부]), kernel_family 는 이름 붙은 커널입니다.
    """
    experiment: str
    schema_version: str = SCHEMA_VERSION
    p: Optional[float] = None
    q: Optional[float] = None
    p_values: List[float] = field(default_factory=lambda: list(CORPUS_SETTINGS['ledger_p_values']))
    q_values: List[float] = field(default_factory=lambda: list(CORPUS_SETTINGS['ledger_q_values']))
    kernel: Optional[List[Any]] = None
    kernel_family: Optional[str] = None
    grid_m: Optional[int] = None
    grid_r: int = NUMERIC_SETTINGS['radial_order']
    grid_theta: int = NUMERIC_SETTINGS['angular_size']
    degree_cap: Optional[int] = None
    tol: float = 1e-6
    seed: int = CORPUS_SETTINGS['seed']
    samples: Optional[int] = None
    max_degree: int = CORPUS_SETTINGS['max_degree']
    output_dir: str = 'results'

    def __post_init__(self):
        check_schema_version(self.schema_version)
        if self.grid_m is not None and (self.grid_m < 2 or self.grid_m & (self.grid_m - 1)):
            raise ValueError(f"grid_m 은 2의 거듭제곱이어야 합니다: {self.grid_m}")
        if self.grid_r < 1 or self.grid_theta < 2:
            raise ValueError(f"격자 크기가 잘못되었습니다: grid_r={self.grid_r}, grid_theta={self.grid_theta}")
        if self.tol <= 0:
            raise ValueError(f"tol 은 양수여야 합니다: {self.tol}")

    def polar_grid(self, radius: float = 1.0) -> PolarGrid:
        return make_polar_grid(self.grid_r, self.grid_theta, radius)

    def sample_count(self, default: int) -> int:
        return self.samples if self.samples is not None else default

    def kernel_poly(self) -> Optional[TaylorPoly]:
        if self.kernel is None:
            return None
        return TaylorPoly(parse_coefficients(self.kernel))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentConfig':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"알 수 없는 설정 필드: {', '.join(unknown)}")
        if 'experiment' not in data:
            raise ValueError("설정에 experiment 필드가 없습니다")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> 'ExperimentConfig':
        return cls.from_dict(json.loads(text))


def check_schema_version(version: str):
    """주 버전이 같아야 읽을 수 있습니다."""
    try:
        found = Version(str(version))
    except InvalidVersion:
        raise ValueError(f"잘못된 schema_version: {version}")
    if found.major != Version(SCHEMA_VERSION).major:
        raise ValueError(f"지원하지 않는 schema_version {version} (지원: {SCHEMA_VERSION})")


def parse_coefficients(entries: List[Any]) -> np.ndarray:
    coeffs = []
    for entry in entries:
        if isinstance(entry, (list, tuple)):
            if len(entry) != 2:
                raise ValueError(f"복소 계수는 [실부, 허부] 형식이어야 합니다: {entry}")
            coeffs.append(complex(float(entry[0]), float(entry[1])))
        else:
            coeffs.append(complex(float(entry)))
    if not coeffs:
        raise ValueError("커널 계수 목록이 비어 있습니다")
    return np.array(coeffs, dtype=complex)


def load_config(experiment: str, path: Optional[str] = None,
                overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    data: Dict[str, Any] = {'experiment': experiment}
    if path:
        with open(path, 'r', encoding='utf-8') as f:
            file_data = json.load(f)
        logger.info(f"설정 파일 로드: {path}")
        data.update(file_data)
        if file_data.get('experiment', experiment) != experiment:
            logger.warning(f"설정 파일의 실험 {file_data['experiment']} 대신 {experiment} 를 실행합니다")
            data['experiment'] = experiment
    for key, value in (overrides or {}).items():
        if value is not None:
            logger.debug(f"명령줄 덮어쓰기: {key}={value}")
            data[key] = value
    return ExperimentConfig.from_dict(data)
