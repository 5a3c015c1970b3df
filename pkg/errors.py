"""
统一的异常类型。

命令行入口根据异常类型决定退出码：
    InputError / PreconditionError -> 2
    VerificationFailure            -> 1
"""


class MoonshineError(Exception):
    """本项目所有异常的基类。"""


class InputError(MoonshineError):
    """输入文件或群描述格式错误。"""

    def __init__(self, message: str, path=None, line=None):
        location = ""
        if path is not None:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
            location += ": "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class PreconditionError(MoonshineError, ValueError):
    """操作的前置条件不满足（非交换对、b >= d、阶不兼容等）。"""


class TruncationError(PreconditionError):
    """级数截断精度不足，无法给出可靠结果。"""


class CapExceededError(PreconditionError):
    """对称群枚举超出上限。"""


class VerificationFailure(MoonshineError):
    """验证失败，报告已写出。"""
