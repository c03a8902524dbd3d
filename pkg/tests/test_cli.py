import pytest

from cousinet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return [line.split("\t") for line in out.splitlines() if line and not line.startswith("#")][1:]


def test_lcoh_matches_negative_monomials(capsys):
    code, out, _ = run(capsys, "lcoh", "--ring", "Q[x,y]", "--ideal", "x,y", "--window", "-2:12")
    assert code == 0 and out.startswith("# cousinet-v1\n")
    got = {(int(i), int(d)): int(n) for i, d, n in rows(out)}
    for (i, d), n in got.items():
        # x^-a y^-b with a, b >= 1 sits in degree 2(a + b)
        want = sum(1 for a in range(1, 8) for b in range(1, 8) if 2 * (a + b) == d) if i == 2 else 0
        assert n == want, (i, d)


def test_realize_tsv_and_pretty(capsys):
    code, out, _ = run(capsys, "realize", "cyc(4,3)", "--window", "-1:5")
    assert code == 0 and out.startswith("# cousinet-v1")
    code, out, _ = run(capsys, "realize", "cyc(4,3)", "--format", "pretty", "--window", "-1:5")
    assert code == 0
    bars = [line.split("|") for line in out.splitlines() if "|" in line]
    assert [d.strip() for d, bar in bars if "#" in bar] == ["0", "2", "4"]


def test_res_rank1_and_rank2(capsys):
    code, out, _ = run(capsys, "res", "S(-2)")
    assert code == 0 and "exact on" in out
    code, out, _ = run(capsys, "--rank", "2", "res", "f(1,(k))")
    assert code == 0 and "terminated True" in out and "ok=False" not in out


def test_ext_rank2_tsv(capsys):
    code, out, _ = run(capsys, "--rank", "2", "ext", "X=f(1,(k))", "Y=a(1,(koszul(2)))")
    assert code == 0
    nz = {(int(s), int(t)): int(n) for s, t, n in rows(out) if int(n)}
    assert nz == {(0, 0): 1, (1, 4): 2, (2, 8): 1}


def test_e2_deterministic_and_seed_invariant(capsys):
    outs = [run(capsys, "e2", "X=DS+(2)", "Y=EG+", "--window", "-6:6", *extra)[1] for extra in ((), (), ("--seed", "3"))]
    assert outs[0] == outs[1] == outs[2]


def test_witness_exit_codes(capsys):
    code, out, err = run(capsys, "witness", "3", "8", "--horizon", "5")
    assert code == 2 and "reason=horizon" in err
    code, out, _ = run(capsys, "witness", "3", "8", "--horizon", "12")
    assert code == 0
    # the truncation at N is constant from step N on, with vanishing lim¹
    assert [r[:4] for r in rows(out)] == [["3", "True", "3", "0"], ["8", "True", "8", "0"]]


@pytest.mark.parametrize(
    "argv,code,needle",
    [
        (("res", "f(1,(cyc(0,1))"), 1, "reason=parse line=1 column="),
        (("ext", "X=S0"), 1, ""),
        (("ext", "X=S0", "Z=S0"), 1, "reason=input"),
        (("realize", "cyc(0,1)", "--window", "5:1"), 1, ""),
    ],
)
def test_input_errors(capsys, argv, code, needle):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert needle in err
