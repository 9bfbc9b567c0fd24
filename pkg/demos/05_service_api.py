#!/usr/bin/env python3
# The HTTP surface, exercised in-process (no socket needed): create a
# dialogue, post turns, watch annotations come back, and fetch the
# persisted trace. `grice serve` exposes exactly these endpoints on a real
# port for the browser client.

import json
import tempfile

from fastapi.testclient import TestClient

from grice.service import ServerConfig, create_app

with tempfile.TemporaryDirectory() as tmp:
    app = create_app(ServerConfig(data_dir=tmp))
    client = TestClient(app)

    print("GET /healthz ->", client.get("/healthz").json())

    created = client.post("/v1/dialogues", json={"brevity_max_tokens": 12})
    dialogue_id = created.json()["id"]
    print("POST /v1/dialogues ->", created.status_code, created.json())

    for text in (
        "The chef warmed the oven and prepared fresh dough.",
        "Hm.",
        "The bright comet crossed the orbit of a distant planet near the galaxy core today",
    ):
        response = client.post(
            f"/v1/dialogues/{dialogue_id}/turns",
            json={"speaker": "human", "text": text, "assertions": []},
        )
        body = response.json()
        print(f"\nPOST turn {body['turnIndex']}: {text[:48]}...")
        for breach in body["breaches"]:
            print(f"  breach: {breach['maxim']}/{breach['kind']} severity {breach['severity']:.2f}")
        for act in body["acts"]:
            print(f"  act: {act['tag']}", act.get("modeSwitch", ""))
        print(f"  reply: {body['reply']['text']}")
        print(f"  modes: {body['modes']}  blackboard: {body['blackboard']}")

    topics = client.get(f"/v1/dialogues/{dialogue_id}/topics").json()
    print("\nGET /topics ->", json.dumps(topics))

    trace = client.get(f"/v1/dialogues/{dialogue_id}")
    print(f"GET /v1/dialogues/{{id}} -> {len(trace.text.splitlines())} trace records")
