# test_modem.py - PSK labelling, precoding and the cluster encoder/decoder
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.utils.error_handler import InvalidSiSymbolError, ValidationError
from src.waveform.modem import (
    ClusterSymbol,
    PskConstellation,
    decode,
    encode,
    gray_decode,
    gray_encode,
    precode,
    psk_modulate,
)
from tests.helpers import all_bit_words, make_link


class TestPsk:

    def test_gray_labels_m4(self):
        psk = PskConstellation(4)
        assert [psk.bits_from_index(i).tolist() for i in range(4)] == [[0, 0], [0, 1], [1, 1], [1, 0]]
        assert psk.index_from_bits([1, 1]) == 2

    @given(st.integers(0, 1023))
    def test_gray_roundtrip(self, value):
        assert int(gray_decode(gray_encode(value))) == value

    def test_neighbours_differ_in_one_bit(self):
        labels = gray_encode(np.arange(16))
        diffs = labels ^ np.roll(labels, -1)
        assert all(bin(int(d)).count('1') == 1 for d in diffs)

    def test_modulate(self):
        symbol = psk_modulate([1, 0], 4)
        assert symbol.index == 3
        assert symbol.value == pytest.approx(-1j)

    def test_quantize(self):
        psk = PskConstellation(2)
        assert psk.quantize(0.9 - 0.1j) == 0
        assert psk.quantize(-0.3 + 0.2j) == 1
        assert psk.quantize(0) == 0
        assert PskConstellation(8).quantize(np.exp(2j * np.pi * 5 / 8) * 1.3) == 5

    def test_wrong_bit_count(self):
        with pytest.raises(ValidationError):
            psk_modulate([1], 4)


class TestPrecode:

    def test_places_code_on_tuple_order(self):
        v = precode((3, 1), np.array([1j, -1]), 4)
        np.testing.assert_array_equal(v, [-1, 0, 1j, 0])

    def test_rejects_bad_tuple(self):
        with pytest.raises(ValidationError):
            precode((1, 1), np.array([1, 1]), 4)
        with pytest.raises(ValidationError):
            precode((1, 2, 3), np.array([1, 1]), 4)


class TestClusterModem:

    def test_encode_1011(self, modem_422):
        symbol = modem_422.encode([1, 0, 1, 1])
        assert symbol.theta == modem_422.family[2] == (2, 3)
        assert symbol.code_index == 1
        assert symbol.mary_index == 1
        code = modem_422.codebook[1]
        np.testing.assert_allclose(symbol.x, [0, -code[0], -code[1], 0])

    def test_energy_and_support(self, osi_modem_422):
        for bits in all_bit_words(4):
            symbol = osi_modem_422.encode(bits)
            assert np.vdot(symbol.x, symbol.x).real == pytest.approx(2.0)
            assert set(np.flatnonzero(symbol.x) + 1) == set(symbol.theta)

    @pytest.mark.parametrize('n,k,m,mapper,kw', [
        (4, 2, 2, 'combinatorial', {}),
        (4, 2, 4, 'osi', {}),
        (5, 4, 2, 'combinatorial', {}),
        (5, 3, 2, 'osi', {}),
        (4, 3, 4, 'sisr', {'sisr_p1': 1}),
        (6, 4, 8, 'combinatorial', {}),
    ])
    def test_roundtrip_every_word(self, n, k, m, mapper, kw):
        modem = make_link(n, k, m, mapper, **kw).modem
        for bits in all_bit_words(modem.budget.p):
            symbol = encode(bits, modem)
            out = decode(symbol.theta, symbol.code_index, symbol.mary_index, modem)
            assert out.tolist() == bits.tolist()

    def test_decode_matches_by_index_set(self, osi_modem_422):
        # (4,1) is stored; (1,4) names the same index set
        bits = osi_modem_422.decode((1, 4), 0, 0)
        assert bits.tolist() == [0, 1, 0, 0]

    def test_decode_unknown_set(self, osi_modem_422):
        with pytest.raises(InvalidSiSymbolError):
            osi_modem_422.decode((1, 2), 0, 0)

    def test_batch_matches_single(self, osi_modem_422):
        words = all_bit_words(4)
        si, code, mary, x = osi_modem_422.encode_batch(words)
        for row, bits in enumerate(words):
            symbol = osi_modem_422.encode(bits)
            assert osi_modem_422.family[si[row]] == symbol.theta
            assert (code[row], mary[row]) == (symbol.code_index, symbol.mary_index)
            np.testing.assert_allclose(x[row], symbol.x)
        np.testing.assert_array_equal(osi_modem_422.decode_batch(si, code, mary), words)

    def test_hypothesis_table_order(self, modem_422):
        table = modem_422.hypotheses
        assert table.shape == (16, 4)
        index = modem_422.hypothesis_index(2, 1, 1)
        assert index == 11
        si, code, mary = modem_422.split_hypothesis(index)
        assert (int(si), int(code), int(mary)) == (2, 1, 1)
        np.testing.assert_allclose(table[index], modem_422.encode([1, 0, 1, 1]).x)
        assert modem_422.hypothesis_bits[index].tolist() == [1, 0, 1, 1]

    def test_hypotheses_are_distinct(self, modem_422):
        table = modem_422.hypotheses
        distances = np.abs(table[:, None, :] - table[None, :, :]).sum(axis=-1)
        np.fill_diagonal(distances, 1.0)
        assert distances.min() > 1e-9

    @pytest.mark.parametrize('n,k,m,mapper', [
        (4, 2, 2, 'combinatorial'),
        (5, 4, 2, 'osi'),
        (6, 4, 8, 'combinatorial'),
        (7, 3, 8, 'combinatorial'),
        (8, 4, 16, 'combinatorial'),
    ])
    def test_encode_is_injective(self, n, k, m, mapper):
        modem = make_link(n, k, m, mapper).modem
        assert modem.budget.p <= 12
        words = all_bit_words(modem.budget.p)
        x = modem.encode_batch(words)[3]
        keys = np.round(np.concatenate([x.real, x.imag], axis=1), 9)
        assert np.unique(keys, axis=0).shape[0] == len(words)

    @pytest.mark.parametrize('domain', ['si', 'mary'])
    def test_bit_domain_attribution(self, domain):
        modem = make_link(5, 3, 4, 'osi').modem
        b = modem.budget
        words = all_bit_words(b.p)
        si, code, mary, x = modem.encode_batch(words)
        columns = range(b.p1) if domain == 'si' else range(b.p1 + b.p2, b.p)
        for j in columns:
            flipped = words.copy()
            flipped[:, j] ^= 1
            si2, code2, mary2, x2 = modem.encode_batch(flipped)
            np.testing.assert_array_equal(code2, code)
            if domain == 'si':
                np.testing.assert_array_equal(mary2, mary)
                assert np.all(si2 != si)
            else:
                np.testing.assert_array_equal(si2, si)
                assert np.all(mary2 != mary)
                # same support and code, only the symbol rotates
                ratio = modem.psk.points[mary2] / modem.psk.points[mary]
                np.testing.assert_allclose(x2, x * ratio[:, None], atol=1e-12)

    def test_batch_rejects_wrong_width(self, modem_422):
        with pytest.raises(ValidationError):
            modem_422.encode_batch(np.zeros((3, 5), dtype=np.uint8))

    def test_symbol_checks_support(self):
        with pytest.raises(ValidationError):
            ClusterSymbol((1, 2), 0, 0, np.array([1, 0, 1, 0], dtype=complex))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(0, 1), min_size=8, max_size=8))
    def test_roundtrip_5_2_16(self, bits):
        modem = make_link(5, 2, 16, 'osi').modem
        assert modem.budget.p == 8
        symbol = modem.encode(bits)
        assert modem.decode(symbol.theta, symbol.code_index, symbol.mary_index).tolist() == bits
