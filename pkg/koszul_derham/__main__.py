# koszul_derham/__main__.py
from koszul_derham.app import main

main()
