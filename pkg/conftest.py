# conftest.py

import os
import sys

# 최상위 모듈을 테스트에서 import 할 수 있도록 경로 추가
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
