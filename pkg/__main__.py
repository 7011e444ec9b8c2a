if __name__ == "__main__":
    import sys

    from main import main

    sys.exit(main())
