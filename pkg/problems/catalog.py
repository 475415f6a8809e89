"""
Модуль каталога встроенных задач и опубликованных эталонных значений.

Все встроенные задачи имеют a1 = a2 = 1, b1 = b2 = 0 (условие Дирихле в x = 1).

Опубликованные числа воспроизводятся только со следующими поправками:
  * в примерах 1, 3-7 таблицы решают (p y')' = -p f при напечатанной f,
    поэтому вариант "table" хранит f с обратным знаком;
  * в примере 1 таблицы не содержат слагаемого c·y1·y2/((l2+y1)(m2+y2)) в f1;
    оно есть только в вариантах k1_printed и k2_printed (без эталонных строк);
  * в примере 2 f2 = c·y1² + d·y1·y2, а табличные значения - частичная
    сумма до третьего члена включительно;
  * в примерах 4 и 7 вес второго уравнения действует на y2.
Вариант "exact" примеров 4-7 использует напечатанную f, при которой
заявленные точные решения удовлетворяют уравнениям.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from expressions.parser import parse
from numerics.green import Weight
from problems.models import Problem
from utils.errors import CatalogError

TABLE_POINTS = (0.1, 0.3, 0.5, 0.7, 0.9)
PROVENANCE = "опубликованная таблица"


@dataclass(frozen=True)
class ReferenceRow:
    """Опубликованная строка: HAM (phi, Res) и ADM (psi, res)."""

    x: float
    phi1: float
    psi1: float
    phi2: float
    psi2: float
    res1: float
    adm_res1: float
    res2: float
    adm_res2: float


@dataclass(frozen=True)
class CatalogEntry:
    """Встроенная задача с метаданными воспроизведения."""

    example: int
    variant: str
    title: str
    build: Callable[[], Problem] = field(repr=False)
    order: int
    printed_c: Optional[tuple[float, float]] = None
    reference: tuple[ReferenceRow, ...] = ()

    @property
    def ref(self) -> str:
        return f"{self.example}:{self.variant}"

    @property
    def control(self) -> tuple[float, float]:
        """Опубликованные (c10, c20) либо случай ADM."""
        return self.printed_c if self.printed_c is not None else (-1.0, -1.0)


def _rows(*rows: tuple) -> tuple[ReferenceRow, ...]:
    return tuple(ReferenceRow(*row) for row in rows)


def _negated(source: str) -> str:
    return f"-({source})"


def _problem(name: str, description: str, k1: float, k2: float, c1: float, c2: float,
             f1: str, f2: str, params: Optional[dict] = None,
             exact1: Optional[str] = None, exact2: Optional[str] = None) -> Problem:
    problem = Problem(
        weight1=Weight.power(k1), weight2=Weight.power(k2),
        a1=1.0, b1=0.0, c1=float(c1), a2=1.0, b2=0.0, c2=float(c2),
        f1=parse(f1), f2=parse(f2), params=dict(params or {}),
        exact1=parse(exact1) if exact1 else None,
        exact2=parse(exact2) if exact2 else None,
        name=name, description=description,
    )
    return problem.validate()


# --- пример 1: углеродный субстрат и кислород ---

_SUBSTRATE_PARAMS = {
    "l1": 1e-4, "l2": 1e-4, "m1": 1e-4, "m2": 1e-4,
    "a": 5.0, "b": 1.0, "c": 0.1, "d": 0.1, "e": 0.05,
}
_SUBSTRATE_F1 = "b - a*y1*y2/((l1 + y1)*(m1 + y2))"
_SUBSTRATE_F2 = "-(d*y1*y2/((l1 + y1)*(m1 + y2)) + e*y1*y2/((l2 + y1)*(m2 + y2)))"
# напечатанная f1 со слагаемым c·y1·y2/((l2+y1)(m2+y2)), в соглашении о знаке таблиц
_SUBSTRATE_F1_PRINTED = _SUBSTRATE_F1 + " - c*y1*y2/((l2 + y1)*(m2 + y2))"


def _substrate(k: int, printed: bool = False) -> Callable[[], Problem]:
    def build() -> Problem:
        if printed:
            return _problem(
                f"1:k{k}_printed", f"Субстрат и кислород, k1 = k2 = {k}, f1 со слагаемым c", k, k, 1.0, 1.0,
                _SUBSTRATE_F1_PRINTED, _SUBSTRATE_F2, _SUBSTRATE_PARAMS,
            )
        return _problem(
            f"1:k{k}", f"Субстрат и кислород, k1 = k2 = {k}", k, k, 1.0, 1.0,
            _SUBSTRATE_F1, _SUBSTRATE_F2, _SUBSTRATE_PARAMS,
        )
    return build


# --- пример 2: каталитическая диффузия ---

def _catalytic(variant: str, a: float, b: float, c: float, d: float) -> Callable[[], Problem]:
    def build() -> Problem:
        return _problem(
            f"2:{variant}", f"Каталитическая диффузия, (a, b, c, d) = ({a:g}, {b:g}, {c:g}, {d:g})",
            2, 2, 1.0, 2.0,
            "a*y1^2 + b*y1*y2", "c*y1^2 + d*y1*y2", {"a": a, "b": b, "c": c, "d": d},
        )
    return build


def _polynomial_system() -> Problem:
    return _problem(
        "3:exact", "Полиномиальная система с точным решением (3 - x², x² - 1)", 3, 4, 2.0, 0.0,
        _negated("y1*y2 + 7 + (y1 - 1)^2"), _negated("y1*y2 - 11 + (y2 - 1)^2"),
        exact1="3 - x^2", exact2="-1 + x^2",
    )


# --- примеры 4-7: экспоненциальные и степенные нелинейности ---

_EXPONENTIAL = {
    4: dict(k=(5, 3), f=("-8*exp(y1) - 16*exp(-y2/2)", "8*exp(-y2) + 8*exp(y1/2)"),
            exact=("-2*ln(1 + x^2)", "2*ln(1 + x^2)"),
            table_c=(-2 * math.log(2), 2 * math.log(2)), exact_c=(-2 * math.log(2), 2 * math.log(2)),
            title="Экспоненциальная система, k1 = 5, k2 = 3"),
    5: dict(k=(2, 2), f=("2*(7 + exp(y2))*exp(-2*y1)", "2*(11 + exp(y1))*exp(-2*y2)"),
            exact=("ln(4 + x^2)", "ln(5 + x^2)"),
            table_c=(math.log(4), math.log(5)), exact_c=(math.log(5), math.log(6)),
            title="Экспоненциальная система, k1 = k2 = 2"),
    6: dict(k=(2, 2), f=("-6*(exp(y2/3) + 4)*exp(2*y1/3)", "6*(exp(-y1/3) + 4)*exp(-2*y2/3)"),
            exact=("-3*ln(2 + x^2)", "3*ln(2 + x^2)"),
            table_c=(-3 * math.log(3), 3 * math.log(3)), exact_c=(-3 * math.log(3), 3 * math.log(3)),
            title="Симметричная экспоненциальная система, k1 = k2 = 2"),
    7: dict(k=(3, 4), f=("-(3 + y2^2)*y1^5", "(4*y1^(-2) + 1)*y2^(-3)"),
            exact=("1/sqrt(1 + x^2)", "sqrt(1 + x^2)"),
            table_c=(1 / math.sqrt(2), math.sqrt(2)), exact_c=(1 / math.sqrt(2), math.sqrt(2)),
            title="Степенная система, k1 = 3, k2 = 4"),
}


def _exponential(example: int, variant: str) -> Callable[[], Problem]:
    data = _EXPONENTIAL[example]

    def build() -> Problem:
        f1, f2 = data["f"]
        k1, k2 = data["k"]
        if variant == "table":
            c1, c2 = data["table_c"]
            return _problem(f"{example}:table", f"{data['title']} (табличные данные)",
                            k1, k2, c1, c2, _negated(f1), _negated(f2))
        c1, c2 = data["exact_c"]
        exact1, exact2 = data["exact"]
        return _problem(f"{example}:exact", f"{data['title']} (точное решение)",
                        k1, k2, c1, c2, f1, f2, exact1=exact1, exact2=exact2)
    return build


_CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(1, "k1", "Субстрат и кислород, k = 1", _substrate(1), order=3,
                 printed_c=(-1.00010501, -1.0000443), reference=_rows(
                     (0.1, 1.9898484, 1.9898484, 1.0371204, 1.0371204, 2.46e-04, 2.46e-04, 7.40e-06, 7.40e-06),
                     (0.3, 1.9098583, 1.9098583, 1.0341207, 1.0341207, 2.17e-04, 2.17e-04, 6.51e-06, 6.51e-06),
                     (0.5, 1.7498793, 1.7498793, 1.0281213, 1.0281213, 1.61e-04, 1.60e-04, 4.83e-06, 4.82e-06),
                     (0.7, 1.5099140, 1.5099140, 1.0191224, 1.0191224, 8.62e-05, 8.62e-05, 2.58e-06, 2.58e-06),
                     (0.9, 1.1899659, 1.1899659, 1.0071239, 1.0071239, 1.51e-05, 1.51e-05, 4.55e-07, 4.55e-07),
                 )),
    CatalogEntry(1, "k2", "Субстрат и кислород, k = 2", _substrate(2), order=3,
                 printed_c=(-0.995713, -0.996167), reference=_rows(
                     (0.1, 1.6598623, 1.6598747, 1.0247458, 1.0247462, 5.49e-05, 1.31e-04, 1.65e-06, 3.94e-06),
                     (0.3, 1.6065388, 1.6065503, 1.0227461, 1.0227465, 3.85e-05, 1.14e-04, 1.16e-06, 3.44e-06),
                     (0.5, 1.4998926, 1.4999020, 1.0187467, 1.0187470, 7.73e-06, 8.34e-05, 2.37e-07, 2.50e-06),
                     (0.7, 1.3399248, 1.3399312, 1.0127477, 1.0127479, 3.18e-05, 4.31e-05, 9.50e-07, 1.29e-06),
                     (0.9, 1.1266376, 1.1266400, 1.0047491, 1.0047492, 6.69e-05, 7.12e-06, 2.00e-06, 2.13e-07),
                 )),
    CatalogEntry(1, "k1_printed", "Субстрат и кислород, k = 1, f1 со слагаемым c", _substrate(1, printed=True),
                 order=3),
    CatalogEntry(1, "k2_printed", "Субстрат и кислород, k = 2, f1 со слагаемым c", _substrate(2, printed=True),
                 order=3),
    CatalogEntry(2, "v1", "Каталитическая диффузия, (1, 2/5, 1/2, 1)", _catalytic("v1", 1.0, 0.4, 0.5, 1.0),
                 order=3, printed_c=(-0.767463, -0.789762), reference=_rows(
                     (0.1, 0.7826843, 0.7658317, 1.6923350, 1.6713156, 1.13e-02, 2.26e-01, 1.59e-02, 7.63e-01),
                     (0.3, 0.7982008, 0.7835530, 1.7144693, 1.6962143, 9.45e-03, 1.95e-01, 1.34e-02, 7.54e-01),
                     (0.5, 0.8302159, 0.8194185, 1.7600510, 1.7466228, 5.96e-03, 1.41e-01, 9.17e-03, 7.21e-01),
                     (0.7, 0.8808479, 0.8746115, 1.8319072, 1.8241881, 4.43e-04, 7.71e-02, 2.78e-03, 6.85e-01),
                     (0.9, 0.9536588, 0.9517495, 1.9347811, 1.9324416, 1.11e-02, 2.06e-02, 1.02e-02, 6.77e-01),
                 )),
    CatalogEntry(2, "v2", "Каталитическая диффузия, (1, 1, 1, 1)", _catalytic("v2", 1.0, 1.0, 1.0, 1.0),
                 order=3, printed_c=(-0.689796, -0.708697), reference=_rows(
                     (0.1, 0.6771397, 0.5967530, 1.6762408, 1.5967530, 4.27e-02, 1.143631, 4.62e-02, 1.1436),
                     (0.3, 0.6992063, 0.6293170, 1.6983544, 1.6293170, 3.57e-02, 0.99354, 3.94e-02, 0.9935),
                     (0.5, 0.7452053, 0.6936848, 1.7444538, 1.6936848, 2.26e-02, 0.72673, 2.71e-02, 0.7267),
                     (0.7, 0.8192784, 0.7895710, 1.8187051, 1.7895710, 1.36e-03, 0.40619, 8.10e-03, 0.4061),
                     (0.9, 0.9286631, 0.9196325, 1.9284103, 1.9196325, 4.41e-02, 0.11286, 3.25e-02, 0.1128),
                 )),
    CatalogEntry(3, "exact", "Полиномиальная система с точным решением", _polynomial_system,
                 order=3, printed_c=(-1.0, -1.0)),
    CatalogEntry(4, "table", "Экспоненциальная система, k1 = 5, k2 = 3", _exponential(4, "table"),
                 order=5, printed_c=(-0.763735, -0.743226), reference=_rows(
                     (0.1, -2.0457870, -2.0358737, 1.9505604, 1.9379913, 2.20e-03, 0.398753, 1.65e-03, 0.290684),
                     (0.3, -1.9982891, -1.9904854, 1.9101010, 1.8999319, 1.51e-03, 0.302292, 1.17e-03, 0.219317),
                     (0.5, -1.9006122, -1.8958769, 1.8267970, 1.8202489, 7.51e-04, 0.168370, 6.34e-04, 0.120416),
                     (0.7, -1.7468574, -1.7447898, 1.6954112, 1.6922536, 3.74e-04, 6.38e-02, 3.94e-04, 4.39e-02),
                     (0.9, -1.5265642, -1.5261201, 1.5066963, 1.5059088, 6.69e-04, 1.18e-02, 7.42e-04, 7.51e-03),
                 )),
    CatalogEntry(4, "exact", "Экспоненциальная система, k1 = 5, k2 = 3, точное решение",
                 _exponential(4, "exact"), order=5),
    CatalogEntry(5, "table", "Экспоненциальная система, k1 = k2 = 2", _exponential(5, "table"),
                 order=4, printed_c=(-0.766209, -0.800994), reference=_rows(
                     (0.1, 1.5828329, 1.5769131, 1.7727080, 1.7709758, 2.14e-03, 8.30e-02, 9.45e-04, 2.33e-02),
                     (0.3, 1.5682776, 1.5632335, 1.7604475, 1.7589804, 1.77e-03, 6.88e-02, 7.83e-04, 1.90e-02),
                     (0.5, 1.5385273, 1.5349546, 1.7354708, 1.7344446, 1.31e-03, 4.57e-02, 5.90e-04, 1.21e-02),
                     (0.7, 1.4922141, 1.4902763, 1.6968123, 1.6962663, 1.23e-03, 2.21e-02, 5.60e-04, 5.48e-03),
                     (0.9, 1.4270318, 1.4264972, 1.6428697, 1.6427234, 2.46e-03, 5.17e-03, 1.06e-03, 1.12e-03),
                 )),
    CatalogEntry(5, "exact", "Экспоненциальная система, k1 = k2 = 2, точное решение",
                 _exponential(5, "exact"), order=4),
    CatalogEntry(6, "table", "Симметричная экспоненциальная система", _exponential(6, "table"),
                 order=4, printed_c=(-0.764679, -0.764679), reference=_rows(
                     (0.1, -3.9096075, -3.8933979, 3.9096075, 3.8933979, 6.39e-03, 0.225756, 6.39e-03, 2.25e-02),
                     (0.3, -3.8640780, -3.8502979, 3.8640780, 3.8502979, 5.34e-03, 0.186062, 5.34e-03, 5.58e-02),
                     (0.5, -3.7710561, -3.7613414, 3.7710561, 3.7613414, 4.11e-03, 0.122139, 4.11e-03, 6.10e-02),
                     (0.7, -3.6263470, -3.6211160, 3.6263470, 3.6211160, 4.05e-03, 5.78e-02, 4.05e-03, 4.04e-02),
                     (0.9, -3.4228817, -3.4214542, 3.4228817, 3.4214542, 8.02e-03, 1.30e-02, 8.02e-03, 1.17e-02),
                 )),
    CatalogEntry(6, "exact", "Симметричная экспоненциальная система, точное решение",
                 _exponential(6, "exact"), order=4),
    CatalogEntry(7, "table", "Степенная система, k1 = 3, k2 = 4", _exponential(7, "table"),
                 order=4, printed_c=(-0.718977, -0.726659), reference=_rows(
                     (0.1, 0.6267350, 0.6326026, 1.6726961, 1.6660461, 1.67e-03, 0.123810, 8.99e-03, 0.195077),
                     (0.3, 0.6323813, 0.6373236, 1.6535356, 1.6483411, 1.35e-03, 0.103217, 7.53e-03, 0.146187),
                     (0.5, 0.6440739, 0.6474853, 1.6144184, 1.6113861, 9.66e-04, 0.069423, 6.11e-03, 7.46e-02),
                     (0.7, 0.6626824, 0.6644484, 1.5535984, 1.5524363, 1.01e-03, 0.034154, 6.20e-03, 1.78e-02),
                     (0.9, 0.6897135, 0.6901626, 1.4679409, 1.4677736, 2.79e-03, 0.008057, 1.01e-02, 1.44e-03),
                 )),
    CatalogEntry(7, "exact", "Степенная система, k1 = 3, k2 = 4, точное решение",
                 _exponential(7, "exact"), order=4),
)


def list_examples() -> list[CatalogEntry]:
    """Все встроенные задачи в порядке номеров и вариантов."""
    return list(_CATALOG)


def entry(example: int, variant: Optional[str] = None) -> CatalogEntry:
    """
    Запись каталога по номеру и варианту.

    Args:
        example: Номер примера 1..7
        variant: Вариант; None - первый вариант примера

    Returns:
        CatalogEntry: Запись каталога
    """
    candidates = [item for item in _CATALOG if item.example == example]
    if not candidates:
        raise CatalogError(f"Неизвестный пример {example}; доступны 1..7")
    if variant is None:
        return candidates[0]
    for item in candidates:
        if item.variant == variant:
            return item
    known = ", ".join(item.variant for item in candidates)
    raise CatalogError(f"У примера {example} нет варианта '{variant}'; доступны: {known}")


def builtin(example: int, variant: Optional[str] = None) -> Problem:
    """
    Встроенная задача.

    Args:
        example: Номер примера 1..7
        variant: Вариант (k1/k2, v1/v2, exact, table)

    Returns:
        Problem: Проверенная задача
    """
    return entry(example, variant).build()
