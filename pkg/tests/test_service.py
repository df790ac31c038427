import pytest
from fastapi.testclient import TestClient

from mmind.rules import mark, parse_display
from mmind.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def start(client, policy="staged-paper"):
    resp = client.post("/api/sessions", json={"policy": policy})
    assert resp.status_code == 200
    return resp.json()


class TestCreateSession:
    def test_staged_paper_opens_1123(self, client):
        state = start(client)
        assert state["suggestion"] == "1123"
        assert state["remaining"] == 1296
        assert state["turn"] == 1
        assert state["status"] == "active"

    def test_shannon_opens_1234(self, client):
        assert start(client, "shannon")["suggestion"] == "1234"

    def test_sessions_get_distinct_ids(self, client):
        assert start(client)["id"] != start(client)["id"]

    def test_unknown_policy_404(self, client):
        assert client.post("/api/sessions", json={"policy": "psychic"}).status_code == 404


class TestFeedback:
    def test_truthful_game_solves_within_six(self, client):
        secret = parse_display("3456")
        state = start(client)
        for _ in range(6):
            fb = mark(parse_display(state["suggestion"]), secret)
            resp = client.post(
                f"/api/sessions/{state['id']}/feedback",
                json={"bulls": fb.bulls, "cows": fb.cows},
            )
            assert resp.status_code == 200
            body = resp.json()
            if fb.bulls == 4:
                assert body["status"] == "solved"
                assert body["suggestion"] is None
                return
            state = {**state, "suggestion": body["suggestion"]}
            assert body["status"] == "active"
            assert body["remaining"] >= 1
        pytest.fail("not solved within six feedback submissions")

    def test_impossible_feedback_rejected(self, client):
        state = start(client)
        resp = client.post(f"/api/sessions/{state['id']}/feedback", json={"bulls": 3, "cows": 1})
        assert resp.status_code == 400
        assert "3B-1C" in resp.json()["detail"]

    def test_contradiction_detected(self, client):
        state = start(client)
        sid = state["id"]
        # 0 bulls 0 cows twice cannot leave any code: the two suggestions
        # plus their excluded colors cover everything for this opening pair
        body = None
        for _ in range(4):
            resp = client.post(f"/api/sessions/{sid}/feedback", json={"bulls": 0, "cows": 0})
            assert resp.status_code == 200
            body = resp.json()
            if body["status"] == "contradicted":
                break
        assert body["status"] == "contradicted"
        assert body["remaining"] == 0
        assert "explanation" in body

    def test_feedback_after_solved_is_409(self, client):
        state = start(client)
        client.post(f"/api/sessions/{state['id']}/feedback", json={"bulls": 4, "cows": 0})
        resp = client.post(f"/api/sessions/{state['id']}/feedback", json={"bulls": 1, "cows": 1})
        assert resp.status_code == 409

    def test_unknown_session_404(self, client):
        assert client.post("/api/sessions/nope/feedback", json={"bulls": 0, "cows": 0}).status_code == 404


class TestUndo:
    def test_undo_restores_previous_suggestion(self, client):
        state = start(client)
        sid = state["id"]
        client.post(f"/api/sessions/{sid}/feedback", json={"bulls": 1, "cows": 0})
        resp = client.post(f"/api/sessions/{sid}/undo")
        body = resp.json()
        assert body["turn"] == 1
        assert body["remaining"] == 1296
        assert body["suggestion"] == "1123"

    def test_undo_after_contradiction_reactivates(self, client):
        state = start(client)
        sid = state["id"]
        while True:
            resp = client.post(f"/api/sessions/{sid}/feedback", json={"bulls": 0, "cows": 0})
            if resp.json()["status"] == "contradicted":
                break
        assert client.post(f"/api/sessions/{sid}/undo").json()["status"] == "active"

    def test_undo_with_no_history_is_409(self, client):
        state = start(client)
        assert client.post(f"/api/sessions/{state['id']}/undo").status_code == 409


class TestReads:
    def test_candidates_head(self, client):
        state = start(client)
        resp = client.get(f"/api/sessions/{state['id']}/candidates", params={"limit": 3})
        assert resp.json() == {"codes": ["1111", "1112", "1113"], "total": 1296}

    def test_candidates_limit_zero(self, client):
        state = start(client)
        body = client.get(f"/api/sessions/{state['id']}/candidates", params={"limit": 0}).json()
        assert body == {"codes": [], "total": 1296}

    def test_what_if_counts_sum_to_remaining(self, client):
        state = start(client)
        body = client.post(f"/api/sessions/{state['id']}/what-if", json={"guess": "1234"}).json()
        assert sum(body["counts"]) == 1296
        assert len(body["counts"]) == 14
        assert sum(body["probabilities"]) == pytest.approx(1.0)
        assert body["counts"][0] == 16

    def test_what_if_on_suggestion_is_maximal(self, client):
        state = start(client)
        sid = state["id"]
        suggested = client.post(f"/api/sessions/{sid}/what-if", json={"guess": state["suggestion"]}).json()
        other = client.post(f"/api/sessions/{sid}/what-if", json={"guess": "1111"}).json()
        assert suggested["score"] >= other["score"] - 1e-9

    def test_what_if_is_pure(self, client):
        state = start(client)
        sid = state["id"]
        for _ in range(3):
            client.post(f"/api/sessions/{sid}/what-if", json={"guess": "2345"})
        body = client.get(f"/api/sessions/{sid}").json()
        assert body["turn"] == 1
        assert body["remaining"] == 1296
        assert body["suggestion"] == "1123"
        assert body["history"] == []

    def test_what_if_malformed_guess_400(self, client):
        state = start(client)
        assert client.post(f"/api/sessions/{state['id']}/what-if", json={"guess": "99"}).status_code == 400

    def test_session_state_includes_history(self, client):
        state = start(client)
        sid = state["id"]
        client.post(f"/api/sessions/{sid}/feedback", json={"bulls": 0, "cows": 2})
        body = client.get(f"/api/sessions/{sid}").json()
        assert body["history"] == [{"guess": "1123", "bulls": 0, "cows": 2}]


class TestDelete:
    def test_delete_then_404(self, client):
        state = start(client)
        sid = state["id"]
        assert client.delete(f"/api/sessions/{sid}").status_code == 204
        assert client.get(f"/api/sessions/{sid}").status_code == 404

    def test_delete_unknown_404(self, client):
        assert client.delete("/api/sessions/nope").status_code == 404
