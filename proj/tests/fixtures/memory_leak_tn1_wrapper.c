// clean: memory-leak
void release(int* p) {
  free(p);
}

int f() {
  int* q = malloc(4);
  release(q);
  return 0;
}
