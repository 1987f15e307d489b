from hypsum.cli import main

main()
