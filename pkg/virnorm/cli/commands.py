"""Command registry: one handler per CLI command, each building a Report."""
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple, Union

from ..algebra.ratfunc import ratfunc_text
from ..core.config import get_settings
from ..core.exceptions import TimeBudgetError, UsageError
from ..core.logging import get_logger
from ..models.gauge import GaugeParams
from ..models.partition import Partition, partition_count
from ..models.verma import VermaVector, VirWord
from ..schemas.report import CheckRecord, Report, RunConfig
from ..services.base import Outcome, rs_pairs
from ..services.bosonization_service import BosonizationService, proportionality_factor
from ..services.nekrasov_service import NekrasovService
from ..services.panel_service import PanelService
from ..services.symfunc_service import SymFuncService
from ..services.virasoro_service import VirasoroService, rrs_formula

logger = get_logger(__name__)

Handler = Callable[["CommandContext"], Union[Report, str]]
CostModel = Callable[["CommandContext"], float]


@dataclass
class CommandContext:
    """Resolved run configuration plus lazily built services."""

    config: RunConfig
    argv: List[str] = field(default_factory=list)

    @cached_property
    def virasoro(self) -> VirasoroService:
        return VirasoroService(singular_method=self.config.method)

    @cached_property
    def symfunc(self) -> SymFuncService:
        return SymFuncService()

    @cached_property
    def bosonization(self) -> BosonizationService:
        return BosonizationService(virasoro=self.virasoro, symfunc=self.symfunc)

    @cached_property
    def nekrasov(self) -> NekrasovService:
        return NekrasovService(virasoro=self.virasoro)

    @cached_property
    def panels(self) -> PanelService:
        return PanelService(seed=self.config.seed, size=self.config.samples)

    def level(self, default: int) -> int:
        return default if self.config.level is None else self.config.level

    def max_level(self, default: int) -> int:
        return default if self.config.max_level is None else self.config.max_level

    def pair(self) -> Tuple[int, int]:
        if self.config.r is None or self.config.s is None:
            raise UsageError(f"{self.config.command}: --r and --s are required")
        return self.config.r, self.config.s

    def report(self, records: List[CheckRecord], **notes: str) -> Report:
        return Report(command=self.config.command, argv=self.argv, notes=notes, records=records)


@dataclass(frozen=True)
class Command:
    name: str
    handler: Handler
    help: str
    cost: Optional[CostModel] = None


class CommandRegistry:
    """Maps command names to handlers, in registration order."""

    def __init__(self) -> None:
        self._commands: Dict[str, Command] = {}

    def command(self, name: str, help: str, cost: Optional[CostModel] = None):
        def decorator(handler: Handler) -> Handler:
            self._commands[name] = Command(name, handler, help, cost)
            return handler

        return decorator

    def __iter__(self):
        return iter(self._commands.values())

    def __contains__(self, name: str) -> bool:
        return name in self._commands

    def get(self, name: str) -> Command:
        try:
            return self._commands[name]
        except KeyError:
            raise UsageError(f"Unknown command: {name!r}") from None

    def execute(self, ctx: CommandContext) -> Union[Report, str]:
        """Run a command after checking its cost estimate against the time budget."""
        command = self.get(ctx.config.command)
        if command.cost is not None:
            estimate = command.cost(ctx)
            logger.debug(
                "Cost estimate",
                extra={"event": "cost_estimate", "command": command.name, "estimate": estimate},
            )
            if estimate > ctx.config.time_budget_secs:
                raise TimeBudgetError(command.name, estimate, ctx.config.time_budget_secs)
        return command.handler(ctx)


registry = CommandRegistry()


# -- cost models, in seconds ------------------------------------------------------


def _level_cost(level: int) -> float:
    return 0.002 * partition_count(level) ** 3


def _pairs_cost(max_level: int) -> float:
    return sum(3 * _level_cost(r * s) for r, s in rs_pairs(max_level))


def _jack_cost(degree: int) -> float:
    return sum(0.0005 * partition_count(d) ** 4 for d in range(1, degree + 1))


def _panel_cost(n_max: int, samples: int) -> float:
    return samples * sum(0.01 * 3**n for n in range(n_max + 1))


def _all_cost(ctx: "CommandContext") -> float:
    settings = get_settings()
    return (
        sum(_level_cost(n) * 4 for n in range(1, settings.all_kac_level + 1))
        + _pairs_cost(settings.all_theorem_level)
        + _pairs_cost(settings.all_property_level)
        + _jack_cost(settings.all_integral_degree)
        + _panel_cost(settings.all_agt_level, ctx.config.samples)
        + _panel_cost(settings.all_recursion_level, ctx.config.samples) * 3
    )


# -- Verma module ------------------------------------------------------------------


def _matrix_latex(rows: List[List[str]]) -> str:
    body = r" \\ ".join(" & ".join(row) for row in rows)
    return f"\\begin{{pmatrix}} {body} \\end{{pmatrix}}"


@registry.command(
    "kac-matrix",
    help="Gram matrix K_n of the contravariant form at c = c(t)",
    cost=lambda ctx: _level_cost(ctx.level(2)),
)
def kac_matrix(ctx: CommandContext) -> Report:
    level = ctx.level(2)
    matrix = ctx.virasoro.kac_matrix(level)

    def body() -> Outcome:
        values = {
            f"K[{lam},{mu}]": matrix.entry(lam, mu).to_text()
            for lam in matrix.partitions
            for mu in matrix.partitions
        }
        values["matrix"] = json.dumps(matrix.to_json(), separators=(",", ":"))
        return Outcome(
            passed=matrix.is_symmetric(),
            values=values,
            latex=f"K_{{{level}}} = " + _matrix_latex(matrix.rows_text(latex=True)),
        )

    record = ctx.virasoro.run_check("kac-matrix", f"level={level}", body)
    return ctx.report([record])


def _word_flag(ctx: CommandContext) -> VirWord:
    if not ctx.config.word:
        raise UsageError(f"{ctx.config.command}: --word is required, e.g. --word '2,-2'")
    return VirWord.parse(ctx.config.word)


@registry.command(
    "word",
    help="word|h> in the PBW basis and its Feigin-Fuchs image",
    cost=lambda ctx: _level_cost(max(_word_flag(ctx).level, 0)) * 4,
)
def word(ctx: CommandContext) -> Report:
    vir_word = _word_flag(ctx)
    level = max(vir_word.level, 0)

    def body() -> Outcome:
        expansion = ctx.virasoro.normal_order_apply(vir_word, level)
        return Outcome(passed=True, values={"verma": VermaVector(level, expansion).to_text()})

    records = [
        ctx.virasoro.run_check("word", str(vir_word), body),
        ctx.bosonization.word_check(vir_word),
    ]
    return ctx.report(records)


@registry.command(
    "kac-det",
    help="Kac determinant factorization as a polynomial identity in (t, h)",
    cost=lambda ctx: 4 * _level_cost(ctx.level(3)),
)
def kac_det(ctx: CommandContext) -> Report:
    return ctx.report([ctx.virasoro.kac_det_check(ctx.level(3))])


@registry.command(
    "singular",
    help="Singular vector P_{r,s}(t) and its annihilation check",
    cost=lambda ctx: _level_cost(ctx.pair()[0] * ctx.pair()[1]) * 4,
)
def singular(ctx: CommandContext) -> Report:
    r, s = ctx.pair()
    vector = ctx.virasoro.singular_vector(r, s)
    record = ctx.virasoro.verify_singular(vector)
    record.latex = vector.to_latex()
    record.values["coefficients"] = json.dumps(vector.to_json(), separators=(",", ":"))
    return ctx.report([record], method=ctx.virasoro.singular_method)


@registry.command(
    "norm",
    help="Norm N_{r,s}(t, h) of the logarithmic primary, expanded at h_{r,s}(t)",
    cost=lambda ctx: _level_cost(ctx.pair()[0] * ctx.pair()[1]) * 8,
)
def norm(ctx: CommandContext) -> Report:
    r, s = ctx.pair()
    service = ctx.virasoro

    def body() -> Outcome:
        expansion = service.norm_expansion(r, s)
        a_value, expected = service.extract_A(r, s), rrs_formula(r, s)
        return Outcome(
            passed=a_value == expected,
            values={"N": expansion.to_text(), "A": a_value.to_text()},
            diff=None if a_value == expected else (a_value - expected).to_text(),
            latex=service.norm_latex(r, s),
        )

    return ctx.report([service.run_check("norm", f"r={r},s={s}", body, pair=(r, s))])


@registry.command(
    "norm-table",
    help="LaTeX lines of every N_{r,s} expansion with rs <= max-level",
    cost=lambda ctx: _pairs_cost(ctx.max_level(4)) * 3,
)
def norm_table(ctx: CommandContext) -> Report:
    max_level = ctx.max_level(4)
    lines = ctx.virasoro.norm_table_latex(max_level)
    records = []
    for (r, s), line in zip(rs_pairs(max_level), lines):
        records.append(
            ctx.virasoro.run_check(
                "norm-table",
                f"r={r},s={s}",
                lambda line=line: Outcome(passed=True, latex=line),
                pair=(r, s),
            )
        )
    return ctx.report(records)


@registry.command(
    "theorem-main",
    help="A_{r,s}(t) = R_{r,s}(t) for every rs <= max-level",
    cost=lambda ctx: _pairs_cost(ctx.max_level(get_settings().max_level)),
)
def theorem_main(ctx: CommandContext) -> Report:
    max_level = ctx.max_level(get_settings().max_level)
    return ctx.report(ctx.virasoro.theorem_main_check(max_level))


def _virasoro_properties(service: VirasoroService, max_level: int) -> List[CheckRecord]:
    records: List[CheckRecord] = []
    for r, s in rs_pairs(max_level):
        records.append(service.verify_singular(service.singular_vector(r, s)))
        records.append(service.rs_symmetry_check(r, s))
        records.append(service.leading_term_check(r, s))
        records.append(service.t_negation_check(r, s))
        records.append(service.evenness_check(r, s))
        records.append(service.degree_bound_check(r, s))
        records.append(service.zero_set_check(r, s))
        records.append(service.shapovalov_closed_form_check(r, s))
        records.append(service.shapovalov_degree_check(r, s))
    for s in range(1, max_level + 1):
        records.append(service.one_row_formula_check(s))
    return records


# -- symmetric functions ------------------------------------------------------------


def _partition_flag(ctx: CommandContext) -> Partition:
    if not ctx.config.partition:
        raise UsageError(f"{ctx.config.command}: --partition is required, e.g. --partition '(2,1)'")
    return Partition.parse(ctx.config.partition)


@registry.command(
    "jack",
    help="Monic and integral Jack functions P_lambda, J_lambda in the power-sum basis",
    cost=lambda ctx: _jack_cost(_partition_flag(ctx).size),
)
def jack(ctx: CommandContext) -> Report:
    partition = _partition_flag(ctx)
    service = ctx.symfunc

    def body() -> Outcome:
        monic = service.jack_monic(partition)
        integral = service.jack_integral(partition)
        return Outcome(passed=True, values={"P": monic.to_text(), "J": integral.to_text()})

    records = [
        service.run_check("jack", str(partition), body),
        service.jack_norm_check(partition),
    ]
    return ctx.report(records)


@registry.command(
    "jack-checks",
    help="Orthogonality, norms, triangularity, integrality and theta identities",
    cost=lambda ctx: _jack_cost(ctx.max_level(get_settings().all_jack_degree)),
)
def jack_checks(ctx: CommandContext) -> Report:
    degree = ctx.max_level(get_settings().all_jack_degree)
    return ctx.report(ctx.symfunc.jack_checks(degree, degree))


# -- bosonization ----------------------------------------------------------------------


@registry.command(
    "bosonize",
    help="Feigin-Fuchs image of P_{r,s} and its symmetric-function image",
    cost=lambda ctx: _level_cost(ctx.pair()[0] * ctx.pair()[1]) * 10,
)
def bosonize(ctx: CommandContext) -> Report:
    r, s = ctx.pair()
    service = ctx.bosonization

    def body() -> Outcome:
        vector = service.bosonize_singular_at_weight(r, s)
        image = service.iota(vector)
        return Outcome(
            passed=not vector.is_zero(),
            values={"vector": vector.to_text(), "iota": image.to_text()},
        )

    records = [
        service.run_check("bosonize", f"r={r},s={s}", body, pair=(r, s)),
        service.jack_proportionality_check(r, s),
    ]
    return ctx.report(records, B=proportionality_factor(r, s).to_text())


@registry.command(
    "proportionality",
    help="Bosonized singular vectors against J_{(s^r)} and the g-decomposition suite",
    cost=lambda ctx: _pairs_cost(ctx.max_level(get_settings().all_property_level)) * 4,
)
def proportionality(ctx: CommandContext) -> Report:
    max_level = ctx.max_level(get_settings().all_property_level)
    return ctx.report(ctx.bosonization.bosonization_checks(max_level))


# -- gauge side ------------------------------------------------------------------------


@registry.command(
    "nekrasov",
    help="SU(2) instanton coefficient Z_n in QQ(e1, e2, a) and its symmetries",
    cost=lambda ctx: 0.05 * 6 ** ctx.level(1),
)
def nekrasov(ctx: CommandContext) -> Report:
    n = ctx.level(1)
    service = ctx.nekrasov

    def body() -> Outcome:
        value = service.nekrasov_Zn(n, GaugeParams.su2_generic())
        return Outcome(passed=True, values={"Z": ratfunc_text(value)})

    records = [service.run_check("nekrasov", f"n={n}", body)]
    if n >= 1:
        panel = ctx.panels.th_panel(n)
        records.extend(service.gauge_checks(n, panel.t_values()[:3]))
    calibration = service.calibrate_exponent()
    return ctx.report(records, exponent=str(calibration.exponent), calibration=calibration.evidence)


@registry.command(
    "agt-check",
    help="f_n(t, h) against the calibrated instanton coefficient on a seeded panel",
    cost=lambda ctx: _panel_cost(ctx.max_level(get_settings().all_agt_level), ctx.config.samples),
)
def agt_check(ctx: CommandContext) -> Report:
    n_max = ctx.max_level(get_settings().all_agt_level)
    service = ctx.nekrasov
    calibration = service.calibrate_exponent()
    panel = ctx.panels.ta_panel(n_max)
    records = service.agt_check(n_max, panel.points)
    records.extend(service.summation_order_check(n_max, panel.points[:1]))
    return ctx.report(
        records,
        exponent=str(calibration.exponent),
        calibration=calibration.evidence,
        seed=str(panel.seed),
        points=panel.describe(),
    )


@registry.command(
    "recursion-check",
    help="Both recursions for the Gram coefficient and their cross-module agreement",
    cost=lambda ctx: 3
    * _panel_cost(ctx.max_level(get_settings().all_recursion_level), ctx.config.samples),
)
def recursion_check(ctx: CommandContext) -> Report:
    n_max = ctx.max_level(get_settings().all_recursion_level)
    panel = ctx.panels.th_panel(n_max)
    records = ctx.virasoro.virasoro_recursion_check(n_max, panel.points)
    records.extend(ctx.nekrasov.gauge_recursion_check(n_max, panel.points))
    records.extend(ctx.nekrasov.cross_side_check(n_max, panel.points))
    records.extend(ctx.virasoro.gaiotto_consistency_check(min(n_max, 3), panel.points[:3]))
    return ctx.report(
        records,
        exponent=str(ctx.nekrasov.exponent),
        seed=str(panel.seed),
        points=panel.describe(),
    )


# -- suites --------------------------------------------------------------------------


@registry.command("all", help="The full verification suite with configured bounds", cost=_all_cost)
def run_all(ctx: CommandContext) -> Report:
    settings = get_settings()
    virasoro, nekrasov_service = ctx.virasoro, ctx.nekrasov
    records: List[CheckRecord] = [
        virasoro.kac_det_check(n) for n in range(1, settings.all_kac_level + 1)
    ]
    records.extend(virasoro.theorem_main_check(settings.all_theorem_level))
    records.extend(_virasoro_properties(virasoro, settings.all_property_level))
    records.extend(ctx.symfunc.jack_checks(settings.all_jack_degree, settings.all_integral_degree))
    records.extend(ctx.bosonization.bosonization_checks(settings.all_property_level))

    calibration = nekrasov_service.calibrate_exponent()
    agt_panel = ctx.panels.ta_panel(settings.all_agt_level)
    records.extend(nekrasov_service.agt_check(settings.all_agt_level, agt_panel.points))
    records.extend(nekrasov_service.summation_order_check(settings.all_agt_level, agt_panel.points[:1]))

    recursion_panel = ctx.panels.th_panel(settings.all_recursion_level)
    records.extend(
        virasoro.virasoro_recursion_check(settings.all_recursion_level, recursion_panel.points)
    )
    records.extend(
        nekrasov_service.gauge_recursion_check(settings.all_recursion_level, recursion_panel.points)
    )
    records.extend(
        nekrasov_service.cross_side_check(settings.all_recursion_level, recursion_panel.points)
    )
    records.extend(virasoro.gaiotto_consistency_check(3, recursion_panel.points[:3]))
    records.extend(
        nekrasov_service.gauge_checks(
            min(settings.all_agt_level, 4), recursion_panel.t_values()[:3]
        )
    )
    logger.debug(
        "Normal-ordering cache",
        extra={"event": "cache_stats", **virasoro.repository.cache_stats()},
    )
    return ctx.report(
        records,
        exponent=str(calibration.exponent),
        calibration=calibration.evidence,
        seed=str(ctx.config.seed),
    )


@registry.command("schema", help="JSON schema of the report format")
def schema(ctx: CommandContext) -> str:
    return json.dumps(Report.model_json_schema(), indent=2, sort_keys=True) + "\n"
