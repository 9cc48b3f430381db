from kmjm import KmjmError, SingularB


def test_payload_shape():
    err = SingularB("no grading element", b=[[2, -2], [-2, 2]])
    assert err.as_dict() == {
        "error": "singular_b",
        "message": "no grading element",
        "context": {"b": [[2, -2], [-2, 2]]},
    }
    assert isinstance(err, KmjmError)


def test_payload_without_context():
    err = KmjmError("plain")
    assert err.as_dict() == {"error": "error", "message": "plain", "context": {}}
