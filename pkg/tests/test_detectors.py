# test_detectors.py - ML, near-ML and LLR-MRC receivers
import numpy as np
import pytest

from src.analysis.complexity import flops
from src.detectors import (
    DETECTORS,
    LlrMrcDetector,
    MlDetector,
    NearMlDetector,
    create_detector,
    detect_llr_mrc,
    detect_ml,
    detect_near_ml,
    llr_scores,
    resolve_llr_alphabet,
    resolve_theta_order,
)
from src.detectors.base_detector import DetectionResult, residual_energy
from src.mappers.base_mapper import SiFamily
from src.system.system_config import SystemConfig
from src.utils.error_handler import ConfigError, InvalidSiSymbolError, ValidationError
from src.waveform.channel import complex_normal
from src.waveform.modem import PskConstellation
from src.waveform.spread_codes import build_codebook
from tests.helpers import all_bit_words, make_link

NOISELESS_SYSTEMS = [
    (4, 2, 2, 'combinatorial', {}),
    (4, 2, 4, 'osi', {}),
    (5, 4, 2, 'osi', {}),
    (5, 3, 4, 'combinatorial', {}),
    (4, 3, 4, 'sisr', {'sisr_p1': 1}),
]


def _noiseless(modem, rng):
    """Every hypothesis through an independent fading draw, no noise"""
    x = modem.hypotheses
    h = complex_normal(rng, x.shape)
    return h * x, h


def _check_exact(detector, modem, rng):
    y, h = _noiseless(modem, rng)
    out = detector.detect_batch(y, h)
    truth = np.arange(modem.num_hypotheses)
    found = modem.hypothesis_index(out.si_index, out.code_index, out.mary_index)
    np.testing.assert_array_equal(found, truth)
    np.testing.assert_allclose(out.metric, 0.0, atol=1e-12)


class TestNoiselessExactness:

    @pytest.mark.parametrize('n,k,m,mapper,kw', NOISELESS_SYSTEMS)
    def test_ml(self, n, k, m, mapper, kw, rng):
        modem = make_link(n, k, m, mapper, **kw).modem
        _check_exact(MlDetector.from_modem(modem), modem, rng)

    @pytest.mark.parametrize('n,k,m,mapper,kw', NOISELESS_SYSTEMS)
    def test_near_ml(self, n, k, m, mapper, kw, rng):
        modem = make_link(n, k, m, mapper, **kw).modem
        _check_exact(NearMlDetector.from_modem(modem), modem, rng)

    @pytest.mark.parametrize('n,k,m,mapper,kw', NOISELESS_SYSTEMS)
    def test_llr_composite(self, n, k, m, mapper, kw, rng):
        modem = make_link(n, k, m, mapper, **kw).modem
        detector = LlrMrcDetector.from_modem(modem, llr_alphabet='composite')
        _check_exact(detector, modem, rng)
        assert detector.replacement_count == 0

    @pytest.mark.parametrize('n,k,m,mapper,kw', [s for s in NOISELESS_SYSTEMS if s[2] >= 4])
    def test_llr_psk_for_m_at_least_4(self, n, k, m, mapper, kw, rng):
        modem = make_link(n, k, m, mapper, **kw).modem
        _check_exact(LlrMrcDetector.from_modem(modem), modem, rng)

    @pytest.mark.parametrize('n,k,m,mapper,kw', NOISELESS_SYSTEMS)
    def test_llr_default_alphabet(self, n, k, m, mapper, kw, rng):
        modem = make_link(n, k, m, mapper, **kw).modem
        _check_exact(LlrMrcDetector.from_modem(modem), modem, rng)

    @pytest.mark.parametrize('n,k,m,mapper', [(4, 2, 2, 'combinatorial'), (4, 2, 2, 'osi'), (4, 3, 4, 'combinatorial')])
    def test_every_word_over_many_channels(self, n, k, m, mapper, rng):
        # all 2^p words through 100 fading draws each, N0 = 0, default detector settings
        modem = make_link(n, k, m, mapper).modem
        bits = np.tile(all_bit_words(modem.budget.p), (100, 1))
        _, _, _, x = modem.encode_batch(bits)
        h = complex_normal(rng, x.shape)
        for kind in DETECTORS:
            out = create_detector(kind, modem).detect_batch(h * x, h)
            decoded = modem.decode_batch(out.si_index, out.code_index, out.mary_index)
            assert np.count_nonzero(decoded != bits) == 0, kind

    def test_psk_alphabet_confuses_idle_and_active_at_bpsk(self, modem_422):
        # a ±j chip scores -|h|², exactly like an idle subcarrier
        detector = LlrMrcDetector.from_modem(modem_422, llr_alphabet='psk')
        lam = detector.llr(np.array([[1j, 0, -1j, 0]]), np.ones((1, 4)))
        np.testing.assert_allclose(lam, [[-1, -1, -1, -1]])

    def test_full_family_never_needs_replacement(self, rng):
        # (4,3): all four index sets are in the family
        modem = make_link(4, 3, 4).modem
        assert len(modem.family) == 4
        detector = LlrMrcDetector.from_modem(modem)
        detector.detect_batch(complex_normal(rng, (100, 4)), complex_normal(rng, (100, 4)))
        assert detector.replacement_count == 0


class TestMl:

    def test_matches_brute_force(self, osi_modem_422, rng):
        detector = MlDetector.from_modem(osi_modem_422)
        x = osi_modem_422.hypotheses
        for _ in range(50):
            h = complex_normal(rng, 4)
            y = h * x[rng.integers(len(x))] + complex_normal(rng, 4, 0.5)
            brute = [residual_energy(y, h, row) for row in x]
            result = detector.detect(y, h)
            index = osi_modem_422.hypothesis_index(result.si_index, result.code_index_hat, result.mary_index_hat)
            assert index == int(np.argmin(brute))
            assert result.metric == pytest.approx(min(brute))

    def test_metric_matrix(self, modem_422, rng):
        detector = MlDetector.from_modem(modem_422)
        y, h = complex_normal(rng, (3, 4)), complex_normal(rng, (3, 4))
        expected = np.array([[residual_energy(y[t], h[t], row) for row in modem_422.hypotheses] for t in range(3)])
        np.testing.assert_allclose(detector.metrics(y, h), expected, atol=1e-12)

    def test_metric_not_above_suboptimal(self, rng):
        modem = make_link(5, 4, 4, 'osi').modem
        detectors = [create_detector(kind, modem) for kind in ('ml', 'near-ml', 'llr-mrc')]
        x = modem.hypotheses[rng.integers(modem.num_hypotheses, size=200)]
        h = complex_normal(rng, x.shape)
        y = h * x + complex_normal(rng, x.shape, 0.3)
        ml, near, llr = (d.detect_batch(y, h).metric for d in detectors)
        assert np.all(ml <= near + 1e-9)
        assert np.all(ml <= llr + 1e-9)

    def test_chunking_does_not_change_result(self, modem_422, rng, monkeypatch):
        detector = MlDetector.from_modem(modem_422)
        y, h = complex_normal(rng, (40, 4)), complex_normal(rng, (40, 4))
        whole = detector.detect_batch(y, h)
        monkeypatch.setattr('src.detectors.ml_detector.CHUNK_ELEMENTS', 16 * 3)
        chunked = detector.detect_batch(y, h)
        np.testing.assert_array_equal(whole.si_index, chunked.si_index)
        np.testing.assert_array_equal(whole.mary_index, chunked.mary_index)


class TestNearMl:

    def test_theta_score_is_full_residual(self, osi_modem_422, rng):
        detector = NearMlDetector.from_modem(osi_modem_422)
        y, h = complex_normal(rng, (1, 4)), complex_normal(rng, (1, 4))
        code, sym, score = detector.theta_scores(y, h)
        for i, _ in enumerate(osi_modem_422.family):
            index = osi_modem_422.hypothesis_index(i, code[0, i], sym[0, i])
            assert score[0, i] == pytest.approx(residual_energy(y[0], h[0], osi_modem_422.hypotheses[index]))

    def test_zero_channel_gain(self, osi_modem_422):
        detector = NearMlDetector.from_modem(osi_modem_422)
        result = detector.detect(np.zeros(4), np.zeros(4))
        assert result.theta_hat == osi_modem_422.family[0]
        assert result.metric == float('inf')


class TestLlrMrc:

    def test_llr_scores(self):
        lam = llr_scores(np.array([2, 1.5, 1.2, 0]), np.ones(4), PskConstellation(2).points)
        np.testing.assert_allclose(lam, [3.0, 2.0, 1.4, -1.0])

    def test_resolve_theta_order(self, osi_modem_422):
        family = osi_modem_422.family
        assert resolve_theta_order({1, 4}, family) == (4, 1)
        assert resolve_theta_order([3, 2], family) == (3, 2)
        with pytest.raises(InvalidSiSymbolError):
            resolve_theta_order({1, 2}, family)

    def test_returns_family_ordering(self, osi_modem_422):
        # {1,4} is stored as (4,1); the estimate follows the family
        x = osi_modem_422.encode([0, 1, 0, 0]).x
        h = np.ones(4)
        result = LlrMrcDetector.from_modem(osi_modem_422, llr_alphabet='composite').detect(h * x, h)
        assert result.theta_hat == (4, 1)

    def test_single_swap_replacement(self, osi_modem_422):
        detector = LlrMrcDetector.from_modem(osi_modem_422, llr_alphabet='psk')
        # λ ranks subcarriers 1,2,3,4; {1,2} is not in the family, one swap gives {1,3}
        result = detector.detect(np.array([2, 1.5, 1.2, 0]), np.ones(4))
        assert result.theta_hat == (1, 3)
        assert not result.fallback
        assert detector.replacement_count == 1
        assert detector.swap_count == 1
        assert detector.fallback_count == 0

    def test_fallback_to_first_tuple(self):
        config = SystemConfig(4, 2, 2)
        family = SiFamily(((1, 2), (3, 4)), 4)
        detector = LlrMrcDetector(family, build_codebook(config), PskConstellation(2), 'psk')
        # ranking 1,3,4,2: {1,3}, {1,4} and {2,4} are all missing
        result = detector.detect(np.array([2, 0, 1.5, 1.2]), np.ones(4))
        assert result.theta_hat == (1, 2)
        assert result.fallback
        assert detector.fallback_count == 1
        assert detector.swap_count == 2
        assert detector.flop_counter.events['swap'] == 2

    def test_ties_break_by_subcarrier_index(self, osi_modem_422):
        detector = LlrMrcDetector.from_modem(osi_modem_422, llr_alphabet='psk')
        result = detector.detect(np.ones(4), np.ones(4))
        # all λ equal: ranking 1,2,3,4 then one swap
        assert result.theta_hat == (1, 3)

    def test_sliced_psk_score_matches_exhaustive(self, rng):
        modem = make_link(5, 3, 8).modem
        detector = LlrMrcDetector.from_modem(modem, llr_alphabet='psk')
        y, h = complex_normal(rng, (50, 5)), complex_normal(rng, (50, 5))
        np.testing.assert_allclose(detector.llr(y, h), llr_scores(y, h, modem.psk.points), atol=1e-12)

    def test_auto_alphabet(self, modem_422):
        assert resolve_llr_alphabet('auto', 2) == 'composite'
        assert resolve_llr_alphabet('auto', 4) == 'psk'
        assert resolve_llr_alphabet('psk', 2) == 'psk'
        assert LlrMrcDetector.from_modem(modem_422).llr_alphabet == 'composite'

    def test_zero_observation(self, osi_modem_422, rng):
        h = complex_normal(rng, 4)
        for kind in DETECTORS:
            result = create_detector(kind, osi_modem_422).detect(np.zeros(4), h)
            assert isinstance(result, DetectionResult)
            assert result.theta_hat in osi_modem_422.family.tuples
            assert np.isfinite(result.metric) and result.metric >= 0

    def test_unknown_alphabet(self, osi_modem_422):
        with pytest.raises(ConfigError):
            LlrMrcDetector.from_modem(osi_modem_422, llr_alphabet='qam')


class TestFlops:

    @staticmethod
    def _counted(kind, link, rng, trials=6, **kwargs):
        detector = create_detector(kind, link.modem, **kwargs)
        x = link.modem.hypotheses[rng.integers(link.modem.num_hypotheses, size=trials)]
        h = complex_normal(rng, x.shape)
        detector.detect_batch(h * x + complex_normal(rng, x.shape, 0.1), h)
        return detector.flops_per_subcarrier()

    @pytest.mark.parametrize('kind,kwargs', [('ml', {}), ('near-ml', {}), ('llr-mrc', {'llr_alphabet': 'psk'})])
    def test_counted_work_tracks_closed_form_across_m(self, kind, kwargs, rng):
        ratios = []
        for m in (2, 4, 8, 16, 32, 64, 128):
            link = make_link(5, 4, m)
            ratios.append(self._counted(kind, link, rng, **kwargs) / flops(kind, link.config))
        ratios = np.array(ratios)
        assert np.all(np.abs(ratios / np.median(ratios) - 1) <= 0.15), ratios

    @pytest.mark.parametrize('kind', ['near-ml', 'llr-mrc'])
    def test_counted_work_near_anchor(self, kind, rng):
        link = make_link(5, 4, 64)
        assert self._counted(kind, link, rng) == pytest.approx(flops(kind, link.config), rel=0.15)

    def test_ml_counter_grows_with_hypotheses(self, rng):
        small, large = (self._counted('ml', make_link(5, 4, m), rng) for m in (4, 64))
        assert large / small == pytest.approx(16, rel=0.05)

    def test_composite_alphabet_costs_more(self, rng):
        link = make_link(5, 4, 2)
        psk = self._counted('llr-mrc', link, rng, llr_alphabet='psk')
        composite = self._counted('llr-mrc', link, rng, llr_alphabet='composite')
        assert composite > psk * 1.5

    def test_counter_reset(self, modem_422, rng):
        detector = MlDetector.from_modem(modem_422)
        detector.detect_batch(complex_normal(rng, (2, 4)), complex_normal(rng, (2, 4)))
        detector.flop_counter.reset()
        assert detector.flops_per_subcarrier() == 0.0
        assert not detector.flop_counter.events


class TestPermutationConsistency:

    @pytest.mark.parametrize('kind', sorted(DETECTORS))
    def test_relabelled_subcarriers(self, kind, rng):
        modem = make_link(5, 3, 4, 'osi').modem
        perm = rng.permutation(5)
        moved = SiFamily(tuple(tuple(int(perm[a - 1]) + 1 for a in theta) for theta in modem.family), 5)
        x = modem.hypotheses[rng.integers(modem.num_hypotheses, size=300)]
        h = complex_normal(rng, x.shape)
        y = h * x + complex_normal(rng, x.shape, 0.5)
        y_moved, h_moved = np.empty_like(y), np.empty_like(h)
        y_moved[:, perm], h_moved[:, perm] = y, h

        base = DETECTORS[kind](modem.family, modem.codebook, modem.psk).detect_batch(y, h)
        other = DETECTORS[kind](moved, modem.codebook, modem.psk).detect_batch(y_moved, h_moved)
        np.testing.assert_array_equal(base.si_index, other.si_index)
        np.testing.assert_array_equal(base.code_index, other.code_index)
        np.testing.assert_array_equal(base.mary_index, other.mary_index)
        np.testing.assert_allclose(base.metric, other.metric)


class TestEntryPoints:

    def test_module_functions(self, osi_modem_422):
        x = osi_modem_422.encode([1, 1, 0, 1]).x
        h = np.array([1, 0.5j, -0.8, 1.2])
        args = (x * h, h, osi_modem_422.family, osi_modem_422.codebook, osi_modem_422.psk)
        for result in (detect_ml(*args), detect_near_ml(*args), detect_llr_mrc(*args, llr_alphabet='composite')):
            assert result.theta_hat == (2, 4)
            assert (result.code_index_hat, result.mary_index_hat) == (0, 1)

    def test_unknown_detector(self, modem_422):
        with pytest.raises(ConfigError):
            create_detector('sphere', modem_422)

    def test_shape_mismatch(self, modem_422):
        with pytest.raises(ValidationError):
            MlDetector.from_modem(modem_422).detect(np.zeros(4), np.zeros(3))
