# app/main.py
import uvicorn
from fastapi import FastAPI

from app.config import PORT
from app.routes import experiments as experiments_router
from app.utils.logger import get_logger

logger = get_logger(__name__)

# ------------------ FastAPI App ------------------
app = FastAPI(title="hardy-points", description="Sampling points and error tables for weighted Hardy spaces")

# ------------------ Routers ------------------
app.include_router(experiments_router.router)


@app.on_event("startup")
async def startup():
    logger.info("✅ hardy-points API ready")


# ------------------ Run App ------------------
if __name__ == "__main__":
    uvicorn.run("app.main:app", host="0.0.0.0", port=PORT, reload=False)
