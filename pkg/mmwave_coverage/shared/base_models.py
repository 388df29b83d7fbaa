"""Base Pydantic models with enhanced default handling."""

from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator


class BaseModelWithDefaults(BaseModel):
    """Base model that replaces None values with field defaults during validation.

    Configuration documents written by hand often carry ``key: null`` for "use
    the default"; those keys validate as if absent. Unknown keys are rejected so
    a misspelled option fails loudly instead of being ignored.
    """

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="before")
    @classmethod
    def set_defaults_for_none_fields(cls, values: Any) -> Any:
        if not isinstance(values, dict):
            return values
        values = dict(values)
        for field_name, field in cls.model_fields.items():
            if field_name in values and values[field_name] is None:
                if field.default_factory is not None:
                    factory = field.default_factory
                    values[field_name] = factory()  # type: ignore[call-arg]
                elif not field.is_required() and field.default is not None:
                    values[field_name] = field.default
        return values
