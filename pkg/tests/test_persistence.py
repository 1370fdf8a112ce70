import json

import pytest

from supergrass.atlas import atlas_cocycle_suite, pi_atlas, plain_atlas
from supergrass.errors import AtlasFormatError, UnsupportedVersionError
from supergrass.persistence import atlas_to_json, dumps, load_atlas, loads, save_atlas


@pytest.mark.parametrize("make", [lambda: pi_atlas(3, 1), lambda: pi_atlas(4, 2).gr(),
                                  lambda: pi_atlas(2, 1).doubled(), lambda: plain_atlas(2, 2, 1, 1)])
def test_round_trip_is_bit_exact(tmp_path, make):
    atlas = make()
    path = tmp_path / "a.json"
    save_atlas(atlas, path)
    text = path.read_text()
    again = load_atlas(path)
    assert dumps(again) == text
    assert again.all_transitions() == atlas.all_transitions()
    assert atlas_cocycle_suite(again).passed


def test_truncated_file(tmp_path):
    text = dumps(pi_atlas(3, 1))
    path = tmp_path / "t.json"
    path.write_text(text[: len(text) // 2])
    with pytest.raises(AtlasFormatError, match="line .* column"):
        load_atlas(path)


def test_version_mismatch():
    data = atlas_to_json(pi_atlas(2, 1))
    data["version"] = 99
    with pytest.raises(UnsupportedVersionError):
        loads(json.dumps(data))


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d.pop("charts"), "charts"),
    (lambda d: d.update(n="two"), "$.n"),
    (lambda d: d.update(format="other"), "$.format"),
    (lambda d: d["transitions"].pop(), "missing"),
    (lambda d: d["transitions"].append(d["transitions"][0]), "transitions"),
])
def test_malformed_fields_are_located(mutate, where):
    data = atlas_to_json(pi_atlas(3, 1))
    mutate(data)
    with pytest.raises(AtlasFormatError, match=where.replace("$", r"\$")):
        loads(json.dumps(data))


def test_tampered_transition_loads_but_fails_verification():
    data = atlas_to_json(pi_atlas(3, 1))
    name, func = data["transitions"][0]["pullback"][0]
    func["num"][0]["coeff"] = ["7/1", "0/1"]
    atlas = loads(json.dumps(data))
    assert not atlas_cocycle_suite(atlas).passed
