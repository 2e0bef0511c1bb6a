"""
Custom exceptions for shadowlab with HTTP-style error codes.
"""


class ShadowLabError(Exception):
    """Base exception for shadowlab package"""

    def __init__(self, message, code=None):
        super().__init__(message)
        self.message = message
        self.code = code or 400

    def to_dict(self):
        """Convert exception to an error report."""
        return {
            "error_code": self.code,
            "error_message": self.message,
        }


class InvalidParameterError(ShadowLabError):
    """Raised when invalid parameters are provided"""

    def __init__(self, parameter_name, parameter_value, valid_values=None):
        if valid_values:
            message = (
                f"Invalid value '{parameter_value}' for parameter '{parameter_name}'. "
                f"Valid values are: {', '.join(str(v) for v in valid_values)}"
            )
        else:
            message = (
                f"Invalid value '{parameter_value}' for parameter '{parameter_name}'"
            )
        super().__init__(message, code=400)
        self.parameter_name = parameter_name
        self.parameter_value = parameter_value
        self.valid_values = valid_values


class IncompatibleSpaceError(ShadowLabError):
    """Raised when operands live in different spaces"""

    def __init__(self, message="Operands belong to different spaces"):
        super().__init__(message, code=400)


class EmptySetError(ShadowLabError):
    """Raised when a point set or family is empty where it must not be"""

    def __init__(self, what="point set"):
        super().__init__(f"Empty {what}: a nonempty {what} is required", code=400)
        self.what = what


class UnknownPointError(ShadowLabError):
    """Raised when a point id does not belong to the system"""

    def __init__(self, point_id, size=None):
        self.point_id = point_id
        if size is None:
            message = f"Point '{point_id}' is not part of the system"
        else:
            message = (
                f"Point '{point_id}' is not part of the system "
                f"(valid ids are 0..{size - 1})"
            )
        super().__init__(message, code=404)


class SystemParseError(ShadowLabError):
    """Raised when a system or set file cannot be parsed"""

    def __init__(self, message="Failed to parse system text", line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message, code=422)


class PreconditionError(ShadowLabError):
    """Raised when an operation's precondition does not hold"""

    def __init__(self, message="Precondition failed"):
        super().__init__(message, code=409)


class EnumerationGuardError(ShadowLabError):
    """Raised when an exhaustive enumeration would exceed the size guard"""

    def __init__(self, size, guard):
        self.size = size
        self.guard = guard
        message = (
            f"Refusing exhaustive enumeration over {size} points "
            f"(guard is {guard}); pass a smaller 'within' superset "
            f"or raise the guard with set_enumeration_guard()"
        )
        super().__init__(message, code=413)
