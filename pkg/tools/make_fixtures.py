"""Regenerate the .bmat and binding fixtures shipped in src/binmat/fixtures."""

from pathlib import Path

from binmat import families as fam
from binmat.io import Bindings, format_bindings, write_bmat
from binmat.patterns import builtin, match
from binmat.suites import chorded_m7

OUT = Path(__file__).resolve().parent.parent / "src" / "binmat" / "fixtures"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    write_bmat(fam.quartic_ladder(4), OUT / "quartic_ladder_4.bmat", "quartic planar ladder C_8^2")
    write_bmat(fam.quartic_ladder(5), OUT / "quartic_ladder_5.bmat", "quartic planar ladder C_10^2")
    write_bmat(fam.wheel(5), OUT / "wheel_5.bmat", "wheel W_5")
    write_bmat(fam.fano(), OUT / "fano.bmat", "F_7")
    write_bmat(fam.m_n(7), OUT / "m7.bmat", "M_7: rank-7 wheel plus g")
    M, N, bowtie = chorded_m7()
    write_bmat(M, OUT / "m7_chord.bmat", "M_7 plus the chord h = x1 + x4")
    write_bmat(N, OUT / "m7_chord_n.bmat", "N = (M_7 plus chord) \\ x3 / y3")
    (OUT / "m7_chord_bowtie.bind").write_text(
        "# bowtie ({x1,x2,y1}, {x3,y3,x4}, {x2,y1,x3,y3}) in m7_chord.bmat\n"
        + format_bindings(Bindings("bowtie", {}, dict(bowtie.assignment))))
    QL5 = fam.quartic_ladder(5)
    m = match(QL5, builtin("bowtie_string", n=3), limit=1)[0]
    (OUT / "quartic_ladder_5_string3.bind").write_text(
        "# bowtie string T_0..T_3 in quartic_ladder_5.bmat\n"
        + format_bindings(Bindings("bowtie_string", {"n": 3}, dict(m.assignment))))
    (OUT / "quartic_ladder_5_string3_partial.bind").write_text(
        "# only the first triangle is fixed; the matcher completes the rest\n"
        "TEMPLATE bowtie_string n=3\na_0 a0\nb_0 b0\nc_0 c0\n")


if __name__ == "__main__":
    main()
