"""
Módulo de salida de terminal para delocalization-power.

Los mensajes para humanos van a stderr; stdout queda para los reportes.
"""

import sys

# ===========================
# DEFINICIONES DE COLORES
# ===========================


class Colors:
    """Códigos ANSI para colores en terminal"""

    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    WHITE = "\033[97m"
    RESET = "\033[0m"
    BOLD = "\033[1m"


HEADER_WIDTH = 72


def print_header(title: str, width: int = HEADER_WIDTH) -> None:
    """Imprime un encabezado formateado.

    Args:
        title: Título del encabezado
        width: Ancho del encabezado (default: HEADER_WIDTH)
    """
    print(f"{Colors.CYAN}{'═' * width}{Colors.RESET}", file=sys.stderr)
    if title:
        print(f"{Colors.CYAN}{title.center(width)}{Colors.RESET}", file=sys.stderr)
        print(f"{Colors.CYAN}{'═' * width}{Colors.RESET}", file=sys.stderr)


def print_info(label: str, value: object) -> None:
    """Imprime una línea ``label: value``."""
    print(f"{Colors.WHITE}{label}: {Colors.YELLOW}{value}{Colors.RESET}", file=sys.stderr)


def print_success(message: str) -> None:
    print(f"{Colors.GREEN}✓ {message}{Colors.RESET}", file=sys.stderr)


def print_warning(message: str) -> None:
    print(f"{Colors.YELLOW}⚠ {message}{Colors.RESET}", file=sys.stderr)


def print_error(message: str) -> None:
    print(f"{Colors.RED}Error: {message}{Colors.RESET}", file=sys.stderr)
