import json

import pytest

from modlie.pipeline import (SCHEMA_VERSION, ConfigError, VerificationConfig, dump_structure_constants,
                             ermolaev_fragment, grade_fragment, grade_table_text,
                             verify_ermolaev_standalone, verify_theorem)

REFERENCE_CHECKS = {
    "f4_positive_roots", "g_dim", "centralizer_e_dim", "L_dim", "L_irreducible",
    "L_absolutely_irreducible", "W_dim", "W_irreducible", "W_absolutely_irreducible",
    "tau_degree_f", "L_tau_table", "ker_ade_L4_dim", "V_dim", "L_is_W_plus_V", "VV_is_W",
    "V_tau_table", "L_regraded_depth", "L_regraded_profile", "L0_dim", "L0_radical_dim",
    "L_ermolaev_hypotheses", "W_regraded_depth", "W_minus1_dim", "W_regraded_profile",
    "W0_dim", "W_witt_hypotheses", "er11_derived_dim", "er11_o_prime_dim", "er11_profile",
    "jacobi_defect_p3", "jacobi_defect_p5", "jacobi_defect_p7", "er12_derived_dim",
    "L_duality_dims", "L_totally_isotropic", "normalizer_L",
}


def test_default_report_passes(default_report):
    assert default_report.passed and default_report.exit_code == 0
    assert default_report.first_failure() is None
    assert default_report.header["halted_at"] is None


def test_reference_checks_present(default_report):
    names = {c.name for c in default_report.checks}
    assert REFERENCE_CHECKS <= names
    for n in REFERENCE_CHECKS:
        assert default_report.check(n).provenance == "reference"
    assert len(names) == len(default_report.checks)
    assert {c.provenance for c in default_report.checks} <= {"reference", "derived", "trivial"}


def test_sign_header(default_report):
    signs = default_report.header["sign_convention"]
    assert signs["version"] == "extraspecial-positive/v1"
    assert list(signs["assignments"]["f_prime"]) == [1, -1]


def test_json_shape(default_report):
    d = json.loads(default_report.to_json())
    assert d["schema"] == SCHEMA_VERSION and d["verdict"] == "pass"
    assert d["n_checks"] == len(d["checks"]) and d["n_failed"] == 0
    assert all(set(c) >= {"name", "computed", "expected", "pass", "provenance"} for c in d["checks"])


def test_text_render(default_report):
    text = default_report.render("text")
    assert "verdict: PASS" in text and "FAIL" not in text.replace("first failure", "")


def test_determinism(default_report):
    again = verify_theorem(VerificationConfig())
    assert again.to_json() == default_report.to_json()
    assert again.to_text() == default_report.to_text()


@pytest.mark.parametrize("name,forced", [("L_dim", 27), ("V_dim", 9), ("normalizer_L", {})])
def test_failure_isolation(name, forced):
    rep = verify_theorem(VerificationConfig(expected_overrides=((name, forced),)))
    failed = [c.name for c in rep.checks if not c.passed]
    assert failed == [name]
    assert not rep.passed and rep.exit_code == 1
    assert rep.first_failure().name == name


def test_negative_control_p5():
    rep = verify_theorem(VerificationConfig(p=5))
    assert rep.exit_code == 1
    assert rep.check("L_dim").computed == 52
    assert rep.header["halted_at"] is not None


def test_negative_control_other_f():
    rep = verify_theorem(VerificationConfig(f_terms=((1, "f_2342"),)))
    assert rep.exit_code == 1
    assert rep.check("tau_degree_f").computed == -14
    assert not rep.check("L_dim").passed


@pytest.mark.parametrize("kw", [dict(p=4), dict(p=1), dict(type_label="E6"),
                                dict(type_label="X9"), dict(output_format="xml"),
                                dict(sign_convention_version="other"),
                                dict(e_terms=((1, "e_9999"),)), dict(f_terms=())])
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        verify_theorem(VerificationConfig(**kw))


def test_config_summary():
    s = VerificationConfig().summary()
    assert s["e"] == "e_1000 + e_0100 + e_0001 + e_0120"
    assert s["f_prime"] == "f_1222 - f_1242"


def test_standalone_ermolaev():
    rep = verify_ermolaev_standalone(1, 1, 3)
    assert rep.passed
    assert rep.check("derived_dim").computed == 26
    rep5 = verify_ermolaev_standalone(1, 1, 5)
    assert rep5.passed and rep5.check("jacobi_identity").computed is False
    bad = verify_ermolaev_standalone(1, 1, 3, overrides=(("derived_dim", 25),))
    assert [c.name for c in bad.checks if not c.passed] == ["derived_dim"]
    with pytest.raises(ConfigError):
        verify_ermolaev_standalone(0, 1, 3)


def test_ermolaev_fragment():
    frag = ermolaev_fragment(1, 1, 3)
    assert frag["dim"] == 27 and frag["derived_dim"] == 26 and frag["simple"] is True
    assert frag["derived_graded_dims"] == {"-1": 3, "0": 6, "1": 9, "2": 6, "3": 2}
    frag5 = ermolaev_fragment(1, 1, 5)
    assert not frag5["jacobi"]["holds"] and frag5["derived_dim"] is None


def test_grade_fragment():
    frag = grade_fragment([2, 2, 0, 2], "L")
    assert frag["homogeneous"] and frag["dim"] == 26
    assert frag["table"][0] == [-14, 1] and frag["grading_axiom_failures"] == 0
    assert "deg |" in grade_table_text(frag)
    whole = grade_fragment([1, 0, 0, 0])
    assert sum(n for _, n in whole["table"]) == 52
    mixed = grade_fragment([1, 0, 0, 0], "e_1000+e_0100")
    assert mixed["homogeneous"] is False
    assert "not homogeneous" in grade_table_text(mixed)
    with pytest.raises(ConfigError):
        grade_fragment([1, 0, 0], "L")
    with pytest.raises(ConfigError):
        grade_fragment([1, 0, 0, 0], "e_7777")


def test_dump():
    text = dump_structure_constants("A1", 3)
    assert text == dump_structure_constants("A1", 3)
    with pytest.raises(ConfigError):
        dump_structure_constants("F4", 9)
