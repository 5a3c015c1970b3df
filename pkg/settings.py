import os
from pathlib import Path

# --- 日志 ---
LOG_FORMAT = '%(asctime)s - %(filename)s- %(funcName)s - %(lineno)d - %(levelname)s - %(message)s'

# --- 枚举上限 ---
# Σ_n 的交换对按共轭类枚举，n 超过该值直接拒绝
SYMMETRIC_ENUMERATION_CAP = int(os.environ.get("MOONSHINE_ENUM_CAP", "8"))

# --- 截断 ---
# 精确多项式求逆时默认保留的相对精度（以 q^{1/N} 的步数计）
DEFAULT_EXACT_INVERSE_STEPS = 20
# j-744 的默认展开阶数
DEFAULT_J_TERMS = 50
# 随机 Norton 级数默认截断（整数指数部分的项数）
DEFAULT_FIXTURE_TRUNC = 12

# --- 随机样例 ---
DEFAULT_SEED = 20240716
# 随机系数取自 {p/q : |p| <= 9, 1 <= q <= 4}
RANDOM_NUMERATOR_BOX = 9
RANDOM_DENOMINATOR_BOX = 4
# 每个指数位置出现非零系数的概率
RANDOM_DENSITY = 0.6

# --- 数值检验 ---
DEFAULT_TOLERANCE = 1e-6
DEFAULT_NUMERIC_TERMS = 40

# --- 输出 ---
REPORT_DIR = Path(os.environ.get("MOONSHINE_REPORT_DIR", Path(__file__).parent / "reports"))

# --- 上同调 ---
# 余边缘穷举检验的最大循环群阶（四元组个数为 n⁴）
COCYCLE_EXHAUSTIVE_CAP = 16
