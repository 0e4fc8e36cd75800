"""Run the fiber service under uvicorn.

Bind address comes from --bind or the HOPF_BIND environment variable
(default 127.0.0.1:8787); the per-request sample cap from HOPF_MAX_SAMPLES.
"""
import argparse
import os

import uvicorn

from hopfgeo.service import bind_address, create_app


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bind", default=None, metavar="HOST:PORT")
    parser.add_argument("--log-level", default="info")
    args = parser.parse_args()
    if args.bind:
        os.environ["HOPF_BIND"] = args.bind
    host, port = bind_address()
    uvicorn.run(create_app(), host=host, port=port,
                log_level=args.log_level)


if __name__ == "__main__":
    main()
