// clean: null-deref
int get(int* p) {
  if (p != 0) {
    return *p;
  }
  return 0;
}

int f() {
  int* q = 0;
  return get(q);
}
