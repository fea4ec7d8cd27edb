# Arquivo: __init__.py
# Pacote eliptico - sistemas elípticos de primeira ordem F(x,Du)=f
