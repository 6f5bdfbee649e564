# config.py

import os

PERFORMANCE_SETTINGS = {
    'max_threads': os.cpu_count(),
    'memory_limit_percentage': 80,  # 최대 메모리 사용률
    'memory_wait_seconds': 5,  # 메모리 초과 시 대기 시간
}

NUMERIC_SETTINGS = {
    'radial_order': 64,  # Gauss-Legendre 반지름 노드 수
    'angular_size': 256,  # PolarGrid 각도 격자 크기
    'cone_midpoints': 64,  # 콘 내부 각도 중점 노드 수
    'ntmax_radial': 96,  # 비접선 최대함수 반지름 샘플 수
    'ntmax_angular': 33,  # 비접선 최대함수 각도 샘플 수 (홀수: 중심선 포함)
    'fd_step': 1e-4,  # ∂_z 유한차분 간격
    'fd_annulus': (0.1, 0.9),  # 유한차분 검사 영역
    'irls_weight_floor': 1e-10,  # IRLS 가중치 하한
    'irls_max_iterations': 500,
    'ascent_max_iterations': 3000,
    'armijo_c': 1e-4,
    'armijo_min_step': 1e-12,
    'precondition_floor': 1e-3,  # 경사 가중 |F|^{2-p} 의 |F| 하한 (max|F| 기준 상대값)
    'duality_tol': 1e-10,  # 쌍대성 검사의 원문제 잔차 허용치 상한
    'degree_padding': 32,  # 극값 문제 차수 상한 = deg(k) + 32
    'dual_degree_factor': 4,  # 쌍대 문제 차수 상한 = 4·대역폭 + 32
    'boundary_oversampling': 4,  # 경계 격자 M ≥ 4·차수 + 16
    'boundary_padding': 16,
    'zero_tolerance': 1e-14,
}

# 실험에서 사용하는 지수 목록
EXPONENT_MENU = (1.0, 6 / 5, 4 / 3, 3 / 2, 2.0, 3.0, 4.0, 6.0)

CORPUS_SETTINGS = {
    'max_degree': 16,
    'samples_per_cell': 200,
    'seed': 7,
    'calderon_exponents': (1.0, 2.0, 4.0),
    'calderon_deltas': (0.5, 1.0, 2.0),
    'ledger_p_values': (1.9, 1.95, 2.05, 2.1, 4 / 3, 4.0),
    'ledger_q_values': (4 / 3, 2.0, 4.0),
}

REPORT_SETTINGS = {
    'csv_columns': [
        'experiment', 'p', 'q', 'kernel_id', 'lhs', 'rhs', 'ratio',
        'tolerance', 'pass', 'grid_M', 'grid_R', 'seed',
    ],
    'csv_name': 'results.csv',
    'json_name': 'report.json',
    'failure_name': 'failure.json',
}

SCHEMA_VERSION = '1.0'
