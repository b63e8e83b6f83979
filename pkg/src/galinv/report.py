"""Machine-readable run reports with stable field order.

Every subcommand emits one Report: command echo, toolkit version, seeds,
per-check records {name, claim, status, detail}, timing.  Exit code 0 iff
every check passed.
"""

import json
import time

from . import __version__


class Report:
    def __init__(self, command, seed=None):
        self.command = command
        self.version = __version__
        self.seed = seed
        self.checks = []
        self._t0 = time.time()
        self.extra = {}

    def add(self, name, passed, claim="", detail=""):
        self.checks.append(
            {
                "name": name,
                "claim": claim,
                "status": "pass" if passed else "fail",
                "detail": detail,
            }
        )
        return passed

    def add_info(self, name, claim="", detail=""):
        self.checks.append(
            {"name": name, "claim": claim, "status": "info", "detail": detail}
        )

    @property
    def passed(self):
        return all(c["status"] != "fail" for c in self.checks)

    def as_dict(self):
        out = {
            "command": self.command,
            "version": self.version,
            "seed": self.seed,
            "checks": self.checks,
            "pass": self.passed,
            "elapsed_s": round(time.time() - self._t0, 3),
        }
        out.update(self.extra)
        return out

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, default=str)

    def print_text(self):
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "info": "info"}[c["status"]]
            line = "[%s] %s" % (mark, c["name"])
            if c["detail"]:
                line += " -- %s" % c["detail"]
            print(line)
        print("result: %s (%.3fs)" % ("pass" if self.passed else "FAIL",
                                      time.time() - self._t0))

    def exit_code(self):
        return 0 if self.passed else 1
