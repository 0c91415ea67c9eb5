from proxiskin.main import main

main()
