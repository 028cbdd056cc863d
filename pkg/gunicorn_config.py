"""gunicorn_config.py - production settings for the causal reasoning API"""
import os

from src import config

bind = f"{config.API_HOST}:{config.API_PORT}"
worker_class = "uvicorn.workers.UvicornWorker"

# Decision queries are CPU bound; one worker per core
workers = int(os.getenv("CAUSAL_API_WORKERS", os.cpu_count() or 1))

# Exhaustive enumeration near the budget can take minutes
timeout = int(os.getenv("CAUSAL_API_TIMEOUT", "300"))

accesslog = "-"
errorlog = "-"
loglevel = config.LOG_LEVEL.lower()

# Recycle workers; cached model spaces can be large
max_requests = 500
max_requests_jitter = 50

preload_app = True


def on_starting(server):
    server.log.info(f"🚀 Starting {workers} workers on {bind} (budget={config.DEFAULT_BUDGET})")
