"""Ошибки, общие для всех модулей лаборатории."""


class BraessError(ValueError):
    """Базовая ошибка вычислений."""


class ParameterError(BraessError):
    pass


class PreconditionError(BraessError):
    pass


class DegenerateInputError(BraessError):
    """Нормированный оператор не определён: у вершины нулевая степень."""

    def __init__(self, vertex, message=None):
        self.vertex = vertex
        super().__init__(
            message or f'vertex {vertex} is isolated (degree 0)')


class NumericError(BraessError):
    pass
