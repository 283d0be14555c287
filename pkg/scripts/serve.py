#!/usr/bin/env python3
"""Launch the rostering HTTP service.

Usage:
    WARDROSTER_TOKEN=secret python scripts/serve.py --port 8400
"""

from __future__ import annotations

import argparse

import uvicorn

from wardroster.service import create_app


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--host", default="127.0.0.1")
    ap.add_argument("--port", type=int, default=8400)
    args = ap.parse_args()
    uvicorn.run(create_app(), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
