# reports.py

import csv
import json
import logging
import os
import traceback
from typing import Any, Dict, Optional

import numpy as np

from config import REPORT_SETTINGS, SCHEMA_VERSION
from experiment_config import ExperimentConfig
from utils import format_float

# 로깅 설정
logger = logging.getLogger(__name__)


def format_cell(value) -> str:
    if value is None:
        return ''
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return format_float(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def to_jsonable(value: Any):
    """numpy 값과 복소수를 JSON 으로 바꿀 수 있는 형태로 변환"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(np.real(value)), float(np.imag(value))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else repr(value)
    return value


def write_csv(rows, path: str):
    columns = REPORT_SETTINGS['csv_columns']
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column)) for column in columns])


def write_reports(result, config: ExperimentConfig, out_dir: Optional[str] = None) -> Dict[str, str]:
    """CSV (표) 와 JSON (행 + 진단 + 원장 + 설정) 을 저장합니다."""
    out_dir = out_dir or config.output_dir
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, REPORT_SETTINGS['csv_name'])
    json_path = os.path.join(out_dir, REPORT_SETTINGS['json_name'])

    write_csv(result.rows, csv_path)
    report = {
        'schema_version': SCHEMA_VERSION,
        'experiment': result.name,
        'all_pass': result.all_pass,
        'config': config.to_dict(),
        'grid': config.polar_grid().describe(),
        'seed': config.seed,
        'rows': result.rows,
        'diagnostics': result.diagnostics,
        'ledger': result.ledger,
        'ledger_conditional': result.ledger is not None,
    }
    with open(json_path, 'w', encoding='utf-8') as f:
        json.dump(to_jsonable(report), f, indent=2, sort_keys=True, ensure_ascii=False)
    logger.info(f"보고서 저장 완료: {csv_path}, {json_path}")
    return {'csv': csv_path, 'json': json_path}


def write_failure(experiment: str, error: BaseException, out_dir: str) -> str:
    """실패 기록 (기계 판독용)"""
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, REPORT_SETTINGS['failure_name'])
    record = {
        'schema_version': SCHEMA_VERSION,
        'experiment': experiment,
        'error_type': type(error).__name__,
        'message': str(error),
        'traceback': traceback.format_exception(type(error), error, error.__traceback__),
    }
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(record, f, indent=2, sort_keys=True, ensure_ascii=False)
    logger.error(f"실패 기록 저장: {path}")
    return path
