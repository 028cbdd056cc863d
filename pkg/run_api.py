"""
run_api.py

Start the causal reasoning API.

    python run_api.py         # gunicorn workers, settings from gunicorn_config.py
    python run_api.py dev     # single uvicorn process with auto-reload
"""
import subprocess
import sys
from typing import List

from src import config

APP = "src.api.app:app"

ENDPOINT_GROUPS = {
    "🔍 Model queries": [
        ("parse", "canonical text and language class of a formula"),
        ("solve", "solutions of M_{Y<-y} in a context"),
        ("check", "evaluate a formula on a model"),
        ("classify", "REC / UNIQ membership and a recursion order"),
        ("affects", "influence witness between two variables"),
    ],
    "📊 Decision procedures": [
        ("sat", "satisfiability in REC, UNIQ or ALL"),
        ("valid", "validity in REC, UNIQ or ALL"),
    ],
}


def banner(mode: str) -> str:
    base = f"http://localhost:{config.API_PORT}"
    rows = [
        "=" * 70,
        f"🚀 CAUSAL REASONING API ({mode})",
        "=" * 70,
        f"   budget={config.DEFAULT_BUDGET}  parallel={config.DEFAULT_PARALLEL}  log={config.LOG_LEVEL}",
        f"   docs:   {base}/docs",
        f"   health: {base}/health",
    ]
    for title, endpoints in ENDPOINT_GROUPS.items():
        rows.append(f"\n{title}")
        rows.extend(f"   • POST /api/{name:<9} {about}" for name, about in endpoints)
    rows.append("\n⌨️  Ctrl+C to stop")
    return "\n".join(rows)


def command(mode: str) -> List[str]:
    if mode == "dev":
        return [
            sys.executable, "-m", "uvicorn", APP,
            "--host", config.API_HOST,
            "--port", str(config.API_PORT),
            "--reload",
            "--log-level", "debug",
        ]
    return ["gunicorn", APP, "--config", "gunicorn_config.py"]


def main(argv: List[str]) -> int:
    mode = argv[0] if argv else "production"
    if mode not in ("dev", "production"):
        print(f"unknown mode {mode!r}; use 'dev' or nothing", file=sys.stderr)
        return 2
    print(banner(mode))
    try:
        return subprocess.run(command(mode)).returncode
    except KeyboardInterrupt:
        return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
