import json
from fractions import Fraction as F

import pytest

from menurev import parse_distribution, parse_menu
from menurev.serialize import ParseError, distribution_to_dict, menu_to_dict


def test_product_form_expands():
    doc = {"items": 2, "kind": "product",
           "marginals": [[["1", "1/2"], ["2", "1/2"]], [["1", "0.5"], ["2", "1/2"]]]}
    dist = parse_distribution(doc)
    assert len(dist.atoms) == 4
    assert all(p == F(1, 4) for _, p in dist.atoms)


def test_decimal_strings_parse_exactly():
    doc = {"items": 1, "kind": "joint",
           "atoms": [{"values": ["0.1"], "prob": "0.25"}, {"values": ["2"], "prob": "0.75"}]}
    dist = parse_distribution(doc)
    assert dist.atoms[0][0] == (F(1, 10),)
    assert dist.atoms[0][1] == F(1, 4)


def test_mass_error_reports_location():
    doc = {"items": 1, "kind": "joint",
           "atoms": [{"values": ["1"], "prob": "1/2"}, {"values": ["2"], "prob": "1/3"}]}
    with pytest.raises(ParseError, match=r"mass 5/6 != 1") as err:
        parse_distribution(doc)
    assert "atoms" in err.value.location


def test_negative_value_rejected():
    doc = {"items": 1, "kind": "joint", "atoms": [{"values": ["-1"], "prob": "1"}]}
    with pytest.raises(ParseError, match="nonnegative"):
        parse_distribution(doc)


def test_malformed_json_and_kind():
    with pytest.raises(ParseError, match="malformed"):
        parse_distribution("{not json")
    with pytest.raises(ParseError, match="kind"):
        parse_distribution({"items": 1, "kind": "weird", "atoms": []})


def test_roundtrip_is_fixed_point(example5):
    doc = distribution_to_dict(example5)
    again = parse_distribution(doc)
    assert again == example5
    assert distribution_to_dict(again) == doc


def test_menu_roundtrip(example4_menu):
    doc = menu_to_dict(example4_menu)
    assert doc["prices"]["1,2,3"] == "9"
    assert parse_menu(json.dumps(doc)) == example4_menu


def test_menu_missing_and_unknown_bundles():
    with pytest.raises(ParseError, match="missing bundles"):
        parse_menu({"items": 2, "prices": {"1": "1", "2": "2"}})
    with pytest.raises(ParseError, match="comma-joined"):
        parse_menu({"items": 2, "prices": {"1": "1", "2": "2", "2,1": "3"}})


def test_empty_support_rejected():
    with pytest.raises(ParseError, match="nonempty"):
        parse_distribution({"items": 1, "kind": "joint", "atoms": []})
    with pytest.raises(ParseError, match="nonempty"):
        parse_distribution({"items": 1, "kind": "product", "marginals": [[]]})
