int f(int n) {
  int* p = malloc(4);
  if (n == 1) {
    free(p);
  }
  free(p); // <- double-free
  return 0;
}
