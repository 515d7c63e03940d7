"""
Module to run the command-line application with `python -m monogamy_cli`.
"""


from monogamy_cli.app import main


if __name__ == '__main__':
    main()
