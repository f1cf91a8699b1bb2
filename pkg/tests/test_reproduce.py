from stdq.reproduce import TOPICS, reproduce_ok, run_reproduce


def test_every_topic_covered_and_only_the_dispute_is_flagged():
    rows = run_reproduce()
    assert {r.topic for r in rows} == set(TOPICS)
    statuses = {r.status for r in rows}
    assert statuses <= {"PASS", "DISPUTED"}
    disputed = [r for r in rows if r.status == "DISPUTED"]
    assert len(disputed) == 1 and disputed[0].topic == "gluing" and disputed[0].got == "false"
    assert reproduce_ok(rows)
    d = rows[0].as_dict()
    assert set(d) == {"topic", "name", "expected", "got", "residual", "tol", "status", "note"}
