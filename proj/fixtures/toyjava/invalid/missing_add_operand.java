public class Example {
  public static void main(String[] args) {
    int a = 1 + ;
    System.out.println(a);
  }
}
