"""HTTP JSON surface: session lifecycle, error contract, log parity."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from alignforge.api import create_app
from alignforge.workspace import replay

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"
GOLDEN_LOG = FIXTURES / "sessions" / "golden-session.jsonl"


@pytest.fixture()
def client(tmp_path):
    app = create_app(FIXTURES, sessions_dir=tmp_path / "sessions")
    with TestClient(app) as c:
        c.sessions_dir = tmp_path / "sessions"
        yield c


def golden_records():
    return [json.loads(line) for line in GOLDEN_LOG.read_text().splitlines()]


def open_golden_session(client):
    head = golden_records()[0]
    response = client.post(
        "/v1/session",
        json={
            "stores": head["stores"],
            "source": head["source"],
            "target": head["target"],
            "hints": head["hints"],
        },
    )
    assert response.status_code == 200
    return response.json()


# -- ontology browsing --------------------------------------------------------


def test_class_listing_is_substantial(client):
    body = client.get("/v1/ontology/classes").json()
    names = {c["iri"] for c in body["classes"]}
    assert "https://purl.vimmp.eu/semantics/evmpo#material" in names
    assert len(body["classes"]) >= 40
    assert body["objectProperties"]


def test_neighbors_walk_the_reduction(client):
    body = client.get(
        "/v1/ontology/neighbors",
        params={"term": "viso-am:rigid_object", "direction": "up"},
    ).json()
    assert [n["display"] for n in body["neighbors"]] == ["viso:model_object"]
    bad = client.get(
        "/v1/ontology/neighbors",
        params={"term": "viso-am:rigid_object", "direction": "sideways"},
    )
    assert bad.status_code == 400
    assert bad.json()["code"] == "invalid-input"


# -- golden parity -------------------------------------------------------------


def test_replaying_the_golden_decisions_over_http_reproduces_the_artifacts(client):
    opened = open_golden_session(client)
    assert opened["candidateCount"] == 10
    sid = opened["sessionId"]

    for record in golden_records()[1:]:
        payload = {"candidate": record["candidateId"], "action": record["action"]}
        if "moveKind" in record:
            payload["moveKind"] = record["moveKind"]
        if "termText" in record:
            payload["termText"] = record["termText"]
        if "reason" in record:
            payload["reason"] = record["reason"]
        response = client.post(f"/v1/session/{sid}/decide", json=payload)
        assert response.status_code == 200, response.text

    body = client.get(f"/v1/session/{sid}/alignment").json()
    assert body["ttl"] == (GOLDEN / "alignment.ttl").read_text()
    assert body["rules"] == (GOLDEN / "alignment.rules").read_text()
    assert len(body["entries"]) == 7

    # the log the API wrote is replayable offline to the same artifacts
    log = Path(opened["log"])
    bench = replay(log, FIXTURES)
    exported = bench.export(log.parent / "out")
    assert Path(exported["ttl"]).read_bytes() == (GOLDEN / "alignment.ttl").read_bytes()
    assert Path(exported["rules"]).read_bytes() == (GOLDEN / "alignment.rules").read_bytes()


def test_the_log_is_written_before_the_response(client):
    opened = open_golden_session(client)
    sid = opened["sessionId"]
    client.post(
        f"/v1/session/{sid}/decide",
        json={"candidate": 3, "action": "discard", "reason": "spurious"},
    )
    lines = Path(opened["log"]).read_text().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[1])["action"] == "discard"


# -- candidate inspection --------------------------------------------------------


def test_validity_of_the_sign_candidate(client):
    sid = open_golden_session(client)["sessionId"]
    body = client.get(f"/v1/session/{sid}/candidate/3/validity").json()
    assert body["logical"] == "not-derivable"
    assert body["structural"] == "unknown"
    assert body["extensional"] == "consistent"
    assert body["trivial"] is False


def test_moves_listing_carries_terms_and_validity(client):
    sid = open_golden_session(client)["sessionId"]
    body = client.get(
        f"/v1/session/{sid}/candidate/8/moves", params={"phase": "relax"}
    ).json()
    kinds = {m["moveKind"] for m in body["moves"]}
    assert "tau-generalization" in kinds
    terms = [m.get("termText") for m in body["moves"]]
    assert "emmo-mereotopology:has_part" in terms
    assert all("validity" in m for m in body["moves"])


# -- error contract ---------------------------------------------------------------


def test_unknown_session_and_candidate_are_404(client):
    assert client.get("/v1/session/s999/candidates").status_code == 404
    sid = open_golden_session(client)["sessionId"]
    response = client.get(f"/v1/session/{sid}/candidate/404/validity")
    assert response.status_code == 404
    assert response.json()["code"] == "unknown-candidate"


def test_malformed_term_is_422(client):
    sid = open_golden_session(client)["sessionId"]
    response = client.post(
        f"/v1/session/{sid}/decide",
        json={
            "candidate": 8,
            "action": "apply",
            "moveKind": "tau-generalization",
            "termText": "chain(bogus",
        },
    )
    assert response.status_code == 422
    assert response.json()["code"] == "malformed-term"


def test_illegal_transitions_are_409(client):
    sid = open_golden_session(client)["sessionId"]
    client.post(f"/v1/session/{sid}/decide", json={"candidate": 3, "action": "discard"})
    again = client.post(f"/v1/session/{sid}/decide", json={"candidate": 3, "action": "accept"})
    assert again.status_code == 409
    assert again.json()["code"] == "illegal-transition"


def test_accepting_a_newly_redundant_candidate_is_409(client):
    sid = open_golden_session(client)["sessionId"]

    def decide(payload):
        return client.post(f"/v1/session/{sid}/decide", json=payload)

    assert decide(
        {
            "candidate": 4,
            "action": "apply",
            "moveKind": "sigma-generalization",
            "termText": "viso:model_object",
        }
    ).status_code == 200
    assert decide({"candidate": 4, "action": "accept"}).status_code == 200
    assert decide(
        {
            "candidate": 5,
            "action": "apply",
            "moveKind": "tau-generalization",
            "termText": "emmo-graphical:symbolic",
        }
    ).status_code == 200
    blocked = decide({"candidate": 5, "action": "accept"})
    assert blocked.status_code == 409
    assert "derivable" in blocked.json()["message"]


def test_missing_scenario_file_is_404(client):
    response = client.post(
        "/v1/eval",
        json={"scenario": "scenarios/absent.ttl", "termText": "vov:involves"},
    )
    assert response.status_code == 404
    assert response.json()["code"] == "missing-file"


def test_missing_required_field_is_400(client):
    response = client.post("/v1/session", json={"source": "scenarios/molmod_source.ttl"})
    assert response.status_code == 400


# -- evaluation and rules ------------------------------------------------------------


def test_eval_property_term_over_a_scenario(client):
    body = client.post(
        "/v1/eval",
        json={
            "scenario": "scenarios/molmod_source.ttl",
            "termText": "vov:involves",
        },
    ).json()
    assert body["kind"] == "property"
    assert body["pairs"] == [["molmod:NH3_POTENTIAL", "molmod:NH3_RIGID_UNIT"]]


def test_eval_class_term_lists_instances(client):
    body = client.post(
        "/v1/eval",
        json={
            "scenario": "scenarios/molmod_source.ttl",
            "termText": "osmo:einecs_listed_material",
            "kind": "class",
        },
    ).json()
    assert body == {"kind": "class", "items": ["molmod:AMMONIA"]}


def test_rules_check_round_trip(client):
    request = {
        "rulesPath": "rules/molmod_alignment.rules",
        "scenarios": ["scenarios/molmod_source.ttl"],
    }
    body = client.post("/v1/rules/check", json=request).json()
    verdicts = {r["rule"]: r["verdict"] for r in body["results"]}
    assert set(verdicts.values()) == {"violated"}
    first = body["results"][0]
    assert first["violations"], "violated rules must carry witness bindings"

    merged = client.post(
        "/v1/rules/check",
        json={
            "rulesPath": "rules/molmod_alignment.rules",
            "scenarios": [
                "scenarios/molmod_source.ttl",
                "scenarios/molmod_transposed.ttl",
            ],
        },
    ).json()
    assert {r["verdict"] for r in merged["results"]} == {"satisfied"}


def test_rules_check_accepts_inline_text(client):
    inline = (FIXTURES / "rules" / "molmod_alignment.rules").read_text()
    body = client.post(
        "/v1/rules/check",
        json={"rulesText": inline, "scenarios": ["scenarios/molmod_source.ttl"]},
    ).json()
    assert len(body["results"]) == 2
