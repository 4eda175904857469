from pydantic import BaseModel
from typing import Optional, List, Dict, Any


# Error response
class ErrorResponse(BaseModel):
    status: str = "error"
    message: str
    detail: Optional[Dict[str, Any]] = None


# Machine-readable command output: a metadata block plus table rows
class OutputDocument(BaseModel):
    meta: Dict[str, Any]
    rows: List[Dict[str, Any]]
