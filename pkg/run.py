"""condlin 命令行入口"""

from src.platforms.cli import main

if __name__ == "__main__":
    main()
