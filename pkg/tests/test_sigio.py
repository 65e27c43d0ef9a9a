import io

import numpy as np
import pytest

from groupmask.sigio import format_value, read_matrix, read_signal, write_matrix, write_signal


class TestSignalRoundTrip:
    def test_file_round_trip(self, tmp_path):
        values = np.array([0.0012355631, -0.0001300081, 2.9648048967e-3, 0.0])
        path = tmp_path / "sig.csv"
        write_signal(values, path)
        assert np.allclose(read_signal(path), values, atol=1e-15)

    def test_stream_round_trip(self):
        buf = io.StringIO()
        write_signal([1.5, -2.25], buf)
        buf.seek(0)
        assert read_signal(buf).tolist() == [1.5, -2.25]

    def test_twelve_significant_digits(self):
        assert format_value(0.00123456789012345) == "0.00123456789012"
        assert format_value(1.0) == "1"

    def test_one_value_per_line(self, tmp_path):
        path = tmp_path / "sig.csv"
        write_signal([1.0, 2.0, 3.0], path)
        assert path.read_text().splitlines() == ["1", "2", "3"]

    def test_malformed_input(self):
        with pytest.raises(ValueError, match="malformed"):
            read_signal(io.StringIO("1.0\nno-number\n"))


class TestMatrixRoundTrip:
    def test_round_trip(self, tmp_path):
        matrix = np.array([[0.5, 0.0], [0.6372595264, -0.1372595264]])
        path = tmp_path / "wrm.csv"
        write_matrix(matrix, path)
        assert np.allclose(read_matrix(path), matrix, atol=1e-12)

    def test_row_major_grid(self, tmp_path):
        path = tmp_path / "m.csv"
        write_matrix([[1.0, 2.0], [3.0, 4.0]], path)
        assert path.read_text() == "1,2\n3,4\n"

    def test_rejects_non_2d(self, tmp_path):
        with pytest.raises(ValueError, match="two-dimensional"):
            write_matrix([1.0, 2.0], tmp_path / "bad.csv")
