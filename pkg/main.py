"""
BookLie - Main Application
API FastAPI sobre el toolkit Poisson-Lie del grupo libro
"""
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.core.config import settings
from app.core.exceptions import DomainException, NotFoundException, ValidationException
from app.core.logging import configure_logging, get_logger

# Importar routers
from app.modules.charts.routers import router as charts_router
from app.modules.classify.routers import router as classify_router
from app.modules.dynamics.routers import router as simulate_router
from app.modules.qalgebra.routers import router as qcheck_router
from app.modules.verification.routers import router as verify_router

logger = get_logger(__name__)


# ============================================
# Lifespan - Event Handlers
# ============================================

@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Context manager para startup y shutdown de la aplicación
    """
    # STARTUP
    configure_logging()
    logger.info("Starting %s v%s", settings.APP_NAME, settings.APP_VERSION)
    logger.info("API Documentation: http://localhost:%d/docs", settings.PORT)
    logger.info("Sweep threads: %d, seed: %d", settings.BOOKLIE_THREADS, settings.SEED)

    yield  # La aplicación está corriendo

    # SHUTDOWN
    logger.info("Shutting down application...")


# ============================================
# Crear aplicación FastAPI
# ============================================

app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    description="API REST para verificar, clasificar y simular estructuras Poisson-Lie del grupo libro",
    docs_url="/docs",
    redoc_url="/redoc",
    openapi_url="/openapi.json",
    lifespan=lifespan,
)


# ============================================
# Configurar CORS
# ============================================

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.backend_cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# ============================================
# Incluir Routers
# ============================================

api_prefix = settings.API_V1_PREFIX

app.include_router(verify_router, prefix=api_prefix)
app.include_router(classify_router, prefix=api_prefix)
app.include_router(charts_router, prefix=api_prefix)
app.include_router(simulate_router, prefix=api_prefix)
app.include_router(qcheck_router, prefix=api_prefix)


# ============================================
# Endpoints raíz
# ============================================

@app.get("/")
async def root():
    """Endpoint raíz - Información de la API"""
    return {
        "name": settings.APP_NAME,
        "version": settings.APP_VERSION,
        "status": "running",
        "docs": "/docs",
        "redoc": "/redoc",
    }


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "version": settings.APP_VERSION,
        "threads": settings.BOOKLIE_THREADS,
    }


# ============================================
# Exception Handlers
# ============================================

@app.exception_handler(ValidationException)
async def validation_handler(request: Request, exc: ValidationException):
    """Parámetros inválidos que escaparon al router"""
    return JSONResponse(status_code=422, content={"detail": exc.message})


@app.exception_handler(NotFoundException)
async def not_found_handler(request: Request, exc: NotFoundException):
    """Handler para recursos no encontrados"""
    return JSONResponse(status_code=404, content={"detail": exc.message})


@app.exception_handler(DomainException)
async def domain_handler(request: Request, exc: DomainException):
    """Operación fuera del dominio matemático"""
    return JSONResponse(status_code=400, content={"detail": exc.message})
