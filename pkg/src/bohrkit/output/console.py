"""Rich console singleton and theme for bohrkit."""

from rich.console import Console
from rich.theme import Theme

BOHRKIT_THEME = Theme({
    "role.lower": "bold cyan",
    "role.upper": "bold magenta",
    "status.pass": "bold green",
    "status.fail": "bold red",
    "status.certified": "green",
    "status.shape": "yellow",
    "status.running": "bold yellow",
    "header": "bold #e94560",
    "value": "bold white",
    "note": "dim",
})

console = Console(theme=BOHRKIT_THEME)
error_console = Console(stderr=True, theme=BOHRKIT_THEME)
