import json

import pytest

from aefair.cli import EXIT_CAP, EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_NO, EXIT_OK, main

ROUNDING_EXAMPLE = {"agents": 2, "items": 3, "values": [[1, 1, "1/2"], [1, 1, "1/2"]]}


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


def read(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


################################################################################
# check                                                                        #
################################################################################


def test_check_aef_allocation(write, capsys):
    instance = write("instance.json", {"agents": 2, "items": 2, "values": [[1, 0], [0, 1]]})
    allocation = write("allocation.json", {"owner": [0, 1]})

    assert main(["check", instance, allocation]) == EXIT_OK

    doc = json.loads(capsys.readouterr().out)
    assert doc["owner"] == [0, 1]
    assert doc["verdicts"]["aef"] is True
    assert doc["verdicts"]["aef1"] is True


@pytest.mark.parametrize("alpha, code", [("1/2", EXIT_OK), ("2/3", EXIT_CHECK_FAILED)])
def test_check_alpha(write, tmp_path, alpha, code):
    instance = write("instance.json", ROUNDING_EXAMPLE)
    allocation = write("allocation.json", {"owner": [0, 0, 1]})
    output = str(tmp_path / "verdicts.json")

    assert main(["check", instance, allocation, "--alpha", alpha, "--output", output]) == code
    assert read(output)["verdicts"]["max_alpha"] == "1/2"


def test_check_without_flags_judges_aef1(write):
    instance = write("instance.json", ROUNDING_EXAMPLE)

    assert main(["check", instance, write("a.json", {"owner": [0, 0, 1]}), "--output", "-"]) == EXIT_CHECK_FAILED
    assert main(["check", instance, write("b.json", {"owner": [0, 1, 0]}), "--output", "-"]) == EXIT_OK


def test_check_gates_on_the_instance_quota(write, tmp_path):
    allocation = write("allocation.json", {"owner": [0, 1, 0]})
    output = str(tmp_path / "verdicts.json")

    met = write("met.json", dict(ROUNDING_EXAMPLE, quota={"lower": [2, 1], "upper": [2, 1]}))
    assert main(["check", met, allocation, "--output", output]) == EXIT_OK
    assert read(output)["verdicts"]["quota_satisfied"] is True

    missed = write("missed.json", dict(ROUNDING_EXAMPLE, quota={"lower": [3, 0], "upper": [3, 0]}))
    assert main(["check", missed, allocation, "--output", output]) == EXIT_CHECK_FAILED

    verdicts = read(output)["verdicts"]
    assert verdicts["aef1"] is True
    assert verdicts["quota_satisfied"] is False


def test_check_eps(write):
    instance = write("instance.json", ROUNDING_EXAMPLE)
    allocation = write("allocation.json", {"owner": [0, 0, 1]})

    assert main(["check", instance, allocation, "--eps", "1/2"]) == EXIT_OK
    assert main(["check", instance, allocation, "--eps", "1/4"]) == EXIT_CHECK_FAILED


def test_check_reports_malformed_rational(write, caplog):
    instance = write("instance.json", {"agents": 1, "items": 3, "values": [[1, 2, "3/0"]]})
    allocation = write("allocation.json", {"owner": [0, 0, 0]})

    assert main(["check", instance, allocation]) == EXIT_INPUT_ERROR
    assert "zero denominator at values[0][2]" in caplog.text


def test_check_reports_bad_owner(write, caplog):
    instance = write("instance.json", ROUNDING_EXAMPLE)
    allocation = write("allocation.json", {"owner": [0, 0, 2]})

    assert main(["check", instance, allocation]) == EXIT_INPUT_ERROR
    assert "owner index out of range at owner[2]" in caplog.text


def test_missing_file(tmp_path):
    assert main(["check", str(tmp_path / "nope.json"), str(tmp_path / "nope.json")]) == EXIT_INPUT_ERROR


################################################################################
# solve                                                                        #
################################################################################


def test_solve_picking(write, tmp_path):
    instance = write("instance.json", {"agents": 2, "items": 3, "values": [[3, 2, 1], [1, 2, 3]]})
    output = str(tmp_path / "allocation.json")

    assert main(["solve", instance, "--output", output]) == EXIT_OK

    doc = read(output)
    assert doc["owner"] == [0, 1, 1]
    assert doc["verdicts"]["aef1"] is True
    assert doc["verdicts"]["algorithm"] == "picking"
    assert doc["verdicts"]["confirmed"] is True


def test_solve_picking_drops_quota(write, caplog):
    doc = dict(ROUNDING_EXAMPLE, quota={"lower": [3, 0], "upper": [3, 0]})

    assert main(["solve", write("instance.json", doc)]) == EXIT_OK
    assert "does not honor quotas" in caplog.text


def test_solve_dp_binary_no(write, tmp_path, capsys):
    source = write("source.json", {"agents": 2, "items": 3, "values": [[1, 1, 1], [1, 1, 1]]})
    embedded = str(tmp_path / "embedded.json")

    assert main(["gen", "--gadget", "ef-embedding", "--input", source, "--output", embedded]) == EXIT_OK
    assert read(embedded)["quota"] == {"lower": [3, 3], "upper": [3, 3]}

    assert main(["solve", embedded, "--algorithm", "dp-binary"]) == EXIT_NO
    assert capsys.readouterr().out == '{"verdict": "NO"}\n'


def test_solve_dp_approx(write, tmp_path):
    doc = dict(ROUNDING_EXAMPLE, quota={"lower": [2, 1], "upper": [2, 1]})
    output = str(tmp_path / "allocation.json")

    assert main(["solve", write("instance.json", doc), "--algorithm", "dp-approx", "--output", output]) == EXIT_OK

    verdicts = read(output)["verdicts"]
    assert verdicts["algorithm"] == "dp-approx"
    assert verdicts["alpha_guarantee"] == "1/3"
    assert verdicts["confirmed"] is True
    assert verdicts["quota_satisfied"] is True


def test_solve_quota_from_file(write, capsys):
    instance = write("instance.json", {"agents": 2, "items": 2, "values": [[1, 1], [1, 1]]})
    quota = write("quota.json", {"lower": [2, 0], "upper": [2, 0]})

    assert main(["solve", instance, "--algorithm", "brute-aef1", "--quota-from-file", quota]) == EXIT_NO
    assert capsys.readouterr().out == '{"verdict": "NO"}\n'


def test_solve_cap(write, caplog):
    instance = write("instance.json", {"agents": 2, "items": 2, "values": [[1, 1], [1, 1]]})

    assert main(["solve", instance, "--algorithm", "brute-aef1", "--max-allocations", "3"]) == EXIT_CAP
    assert "Resource cap reached" in caplog.text


def test_solve_input_errors(write):
    quota = {"lower": [1, 1], "upper": [1, 1]}
    non_binary = write("non_binary.json", {"agents": 2, "items": 2, "values": [[2, 0], [0, 1]], "quota": quota})
    unconstrained = write("unconstrained.json", {"agents": 2, "items": 2, "values": [[1, 0], [0, 1]]})

    assert main(["solve", non_binary, "--algorithm", "dp-binary"]) == EXIT_INPUT_ERROR
    assert main(["solve", unconstrained, "--algorithm", "dp-binary"]) == EXIT_INPUT_ERROR


def test_solve_rejects_unknown_algorithm(write):
    with pytest.raises(SystemExit) as excinfo:
        main(["solve", write("instance.json", ROUNDING_EXAMPLE), "--algorithm", "greedy"])

    assert excinfo.value.code == 2


################################################################################
# gen                                                                          #
################################################################################


def test_gen_partition(capsys):
    assert main(["gen", "--gadget", "partition", "--input", "X=[1,1,3,3]"]) == EXIT_OK

    doc = json.loads(capsys.readouterr().out)
    assert doc["agents"] == 2
    assert len(doc["items"]) == 8
    assert doc["gadget"] == {"name": "partition", "k": 4, "T": 4, "valid_assumptions": True}


def test_gen_eqcard_from_file(write, capsys):
    source = write("x.json", {"X": [1] * 8})

    assert main(["gen", "--gadget", "eqcard", "--input", source]) == EXIT_OK

    doc = json.loads(capsys.readouterr().out)
    assert len(doc["items"]) == 18
    assert doc["quota"] == {"lower": [6, 6, 6], "upper": [6, 6, 6]}


def test_gen_random_is_reproducible(capsys):
    assert main(["gen", "--random", "3", "5", "binary(1/2)", "7"]) == EXIT_OK
    first = capsys.readouterr().out

    assert main(["gen", "--random", "3", "5", "binary(1/2)", "7"]) == EXIT_OK
    assert capsys.readouterr().out == first
    assert json.loads(first)["random"] == {"model": "binary(1/2)", "seed": 7}


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--random", "three", "5", "binary(1/2)", "7"],
        ["gen", "--random", "3", "5", "gaussian(0)", "7"],
        ["gen", "--gadget", "partition", "--input", "X=[1,0,3]"],
        ["gen", "--gadget", "eqcard", "--input", "X=[1,2,3]"],
        ["gen", "--gadget", "partition", "--input", "X=[1,"],
    ],
)
def test_gen_input_errors(argv):
    assert main(argv) == EXIT_INPUT_ERROR


def test_gen_gadget_requires_input():
    with pytest.raises(SystemExit) as excinfo:
        main(["gen", "--gadget", "partition"])

    assert excinfo.value.code == 2
