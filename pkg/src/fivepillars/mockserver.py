"""Stdlib HTTP server exposing the fixture mocks behind the wire contracts.

Serves POST /v1/chat, /v1/embed, /v1/classify, /v1/score, /v1/ris,
/v1/archive and GET /healthz, all JSON, identical schemas to a real
model-serving backend. Used by the HTTP-client tests and available to run
the CLI against a URL instead of in-process mocks.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .backends import b64decode
from .mocks import load_mock_backends

log = logging.getLogger(__name__)


def _handler_for(backends):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            log.debug("mockserver: " + fmt, *args)

        def _reply(self, payload, status=200):
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            if self.path == "/healthz":
                self._reply({"status": "ok", "mock": True})
            else:
                self._reply({"error": "not found"}, status=404)

        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            try:
                request = json.loads(self.rfile.read(length).decode("utf-8"))
            except (json.JSONDecodeError, UnicodeDecodeError):
                self._reply({"error": "invalid JSON"}, status=400)
                return
            try:
                if self.path == "/v1/chat":
                    result = backends.chat.chat(
                        request["messages"],
                        temperature=request.get("temperature", 0.2),
                        max_tokens=request.get("max_tokens", 256),
                        seed=request.get("seed"),
                    )
                    self._reply({"text": result.text, "refused": result.refused})
                elif self.path == "/v1/embed":
                    kind = request["kind"]
                    content = request["content"]
                    if kind == "image":
                        content = b64decode(content)
                    vector = backends.embed.embed(kind, content)
                    self._reply({"vector": vector, "dim": len(vector)})
                elif self.path == "/v1/classify":
                    label, score = backends.classifier.classify(b64decode(request["image"]))
                    self._reply({"label": label, "score": score})
                elif self.path == "/v1/score":
                    scores = backends.scorer.score(request["candidates"], request["references"])
                    self._reply({"scores": scores})
                elif self.path == "/v1/ris":
                    image = request["image"]
                    if image.startswith(("http://", "https://")):
                        ref, data = image, None
                    else:
                        ref, data = "", b64decode(image)
                    results = backends.ris.search(ref, data, request.get("max_results", 50))
                    self._reply({
                        "results": [
                            {
                                "page_url": r.page_url,
                                "match_kind": r.match_kind.value,
                                "matched_image_urls": list(r.matched_image_urls),
                            }
                            for r in results
                        ]
                    })
                elif self.path == "/v1/archive":
                    urls = backends.archive.collect(
                        request["domain"], request["from_year"], request["to_year"]
                    )
                    self._reply({"urls": urls})
                else:
                    self._reply({"error": "not found"}, status=404)
            except KeyError as exc:
                self._reply({"error": f"missing field {exc}"}, status=400)
            except Exception as exc:  # surface as a 500 for the client to retry
                log.exception("mockserver error on %s", self.path)
                self._reply({"error": str(exc)}, status=500)

    return Handler


class MockServer:
    """In-process mock backend server bound to an ephemeral port."""

    def __init__(self, fixtures_dir, port: int = 0):
        self.backends = load_mock_backends(fixtures_dir)
        self._server = ThreadingHTTPServer(("127.0.0.1", port), _handler_for(self.backends))
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def __enter__(self) -> "MockServer":
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)


def main():  # pragma: no cover - convenience entry point
    import argparse

    parser = argparse.ArgumentParser(description="serve fixture mocks over HTTP")
    parser.add_argument("fixtures", help="fixtures directory")
    parser.add_argument("--port", type=int, default=8099)
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO)
    server = MockServer(args.fixtures, args.port)
    with server:
        print(f"mock server on {server.url}")
        threading.Event().wait()


if __name__ == "__main__":  # pragma: no cover
    main()
