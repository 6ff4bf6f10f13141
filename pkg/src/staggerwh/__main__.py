# -*- coding: UTF-8 -*-
from staggerwh.cli import main

if __name__ == "__main__":
    main()
