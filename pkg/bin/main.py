#!/usr/bin/env python3
from wqed.commands.cli import main

main()
